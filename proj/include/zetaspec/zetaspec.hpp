#pragma once

// Umbrella header: special values of multivariate Dirichlet series
// zeta(s;f,g) = sum_{k in N_0^p} g(k) f(k)^{-s} and zeta integrals
// Z(s;f,g) = int_{[0,inf)^p} g(x) f(x)^{-s} dx, for polynomials f satisfying
// Mahler's Hypothesis.

#include "zetaspec/bernoulli.hpp"
#include "zetaspec/cubical.hpp"
#include "zetaspec/errors.hpp"
#include "zetaspec/expand.hpp"
#include "zetaspec/multipoly.hpp"
#include "zetaspec/parallel.hpp"
#include "zetaspec/quadrature.hpp"
#include "zetaspec/rational.hpp"
#include "zetaspec/series.hpp"
#include "zetaspec/values.hpp"
