#pragma once

#include <random>

#include "zetaspec/zetaspec.hpp"

namespace testutil {

using namespace zetaspec;

// Deterministic random polynomials: small rational coefficients, bounded
// exponents.
inline MultiPoly random_poly(std::mt19937& rng, int p, int max_deg, int max_terms = 6) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<int> expo(0, max_deg);
    MultiPoly f(p);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        MultiIndex L(p);
        int budget = max_deg;
        for (int j = 0; j < p; ++j) {
            L[j] = std::min(expo(rng), budget);
            budget -= L[j];
        }
        int n = num(rng);
        if (n == 0) n = 1;
        f.add_term(std::move(L), Rational(n, den(rng)));
    }
    return f;
}

inline std::vector<Rational> random_point(std::mt19937& rng, int p, int max_den = 7) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, max_den);
    std::vector<Rational> x(p);
    for (auto& xi : x) xi = Rational(num(rng), den(rng));
    return x;
}

}  // namespace testutil
