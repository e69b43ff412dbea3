#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "zetaspec/quadrature.hpp"
#include "zetaspec/rational.hpp"

namespace zetaspec {

// A point on the face domain: the part of the boundary of the unit hypercube
// inside the octant where the max-norm equals 1. `face` is 1-based; `coords`
// holds the remaining p-1 coordinates in original order, each in [0,1].
template <class T>
struct FacePointT {
    int face = 1;
    std::vector<T> coords;
};

using FacePoint = FacePointT<double>;

template <class T>
std::vector<T> embed(const FacePointT<T>& sigma) {
    std::vector<T> x(sigma.coords.size() + 1);
    int k = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = (static_cast<int>(i) == sigma.face - 1) ? T(1) : sigma.coords[k++];
    return x;
}

// Cubical coordinates: rho = max-norm, sigma = x / rho. Ties broken by the
// smallest face index. Exact on rational inputs.
template <class T>
std::pair<T, FacePointT<T>> decompose(const std::vector<T>& x) {
    if (x.empty()) throw DimensionMismatch("decompose needs at least one coordinate");
    T rho{};
    int face = -1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        T a = x[i] < T(0) ? T(-x[i]) : x[i];
        if (face < 0 || a > rho) {
            rho = a;
            face = static_cast<int>(i);
        }
    }
    if (rho == T(0)) throw ZeroPoint("cannot decompose the origin");
    FacePointT<T> sigma;
    sigma.face = face + 1;
    sigma.coords.reserve(x.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (static_cast<int>(i) != face) sigma.coords.push_back(x[i] / rho);
    return {rho, std::move(sigma)};
}

namespace detail {

// One quadrature pass over the face domain for a vector-valued integrand:
// h(sigma, out) writes `dim` components. p = 1 is the single point {1}.
template <class T, class Fn>
std::vector<T> face_pass(Fn&& h, int p, std::size_t dim, const QuadratureRule& rule) {
    if (p == 1) {
        std::vector<T> out(dim);
        FacePoint sigma{1, {}};
        h(sigma, out.data());
        return out;
    }
    const std::size_t per_face = [&] {
        std::size_t t = 1;
        for (int i = 0; i < p - 1; ++i) t *= rule.nodes.size();
        return t;
    }();
    const std::size_t total = static_cast<std::size_t>(p) * per_face;
    std::vector<T> slots(total * dim);
    parallel_for(total, [&](std::size_t flat) {
        int face = static_cast<int>(flat / per_face);
        std::size_t rem = flat % per_face;
        FacePoint sigma;
        sigma.face = face + 1;
        sigma.coords.resize(p - 1);
        double w = 1.0;
        for (int i = 0; i < p - 1; ++i) {
            std::size_t k = rem % rule.nodes.size();
            rem /= rule.nodes.size();
            sigma.coords[i] = rule.nodes[k];
            w *= rule.weights[k];
        }
        std::vector<T> local(dim);
        h(sigma, local.data());
        for (std::size_t d = 0; d < dim; ++d) slots[flat * dim + d] = static_cast<T>(w * local[d]);
    });
    std::vector<T> sum(dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t d = 0; d < dim; ++d) sum[d] += slots[i * dim + d];
    return sum;
}

}  // namespace detail

// Integral over the face domain of a vector-valued integrand, with per
// component order-halving error estimates.
template <class T, class Fn>
std::pair<std::vector<T>, std::vector<double>> face_integral_vec(Fn&& h, int p, std::size_t dim,
                                                                 const QuadratureRule& rule) {
    std::vector<T> fine = detail::face_pass<T>(h, p, dim, rule);
    std::vector<double> err(dim, 0.0);
    if (p > 1) {
        std::vector<T> coarse = detail::face_pass<T>(h, p, dim, rule.halved());
        for (std::size_t d = 0; d < dim; ++d) err[d] = detail::magnitude<T>(fine[d] - coarse[d]);
    }
    return {std::move(fine), std::move(err)};
}

// Scalar face integral: sum over the p faces {sigma_i = 1} of tensor
// Gauss-Legendre approximations. For p = 1 the face domain is the single point
// {1} and the integral is h(1) with zero error.
template <class T = double, class Fn>
Estimate<T> face_integral(Fn&& h, int p, const QuadratureRule& rule) {
    auto wrapped = [&](const FacePoint& sigma, T* out) { out[0] = h(sigma); };
    auto [vals, errs] = face_integral_vec<T>(wrapped, p, 1, rule);
    return {vals[0], errs[0]};
}

}  // namespace zetaspec
