#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "zetaspec/errors.hpp"
#include "zetaspec/parallel.hpp"

namespace zetaspec {

// Gauss-Legendre rule on [0,1]. Weights are positive and sum to 1; the rule is
// exact on polynomials of degree <= 2*order-1 up to rounding.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static QuadratureRule gauss_legendre(int order) {
        if (order < 1) throw DimensionMismatch("quadrature order must be positive");
        QuadratureRule rule;
        rule.order = order;
        rule.nodes.resize(order);
        rule.weights.resize(order);
        const int n = order;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            // Newton iteration on P_n from the Chebyshev initial guess.
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double w = 2.0 / ((1.0 - x * x) * pp * pp);
            // Map [-1,1] -> [0,1].
            rule.nodes[i] = 0.5 * (1.0 - x);
            rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
            rule.weights[i] = 0.5 * w;
            rule.weights[n - 1 - i] = 0.5 * w;
        }
        return rule;
    }

    QuadratureRule halved() const { return gauss_legendre(std::max(1, order / 2)); }
};

template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

// One tensor-product pass over a box. Deterministic: node contributions are
// stored per flat index and reduced in order.
template <class T, class Fn>
T box_pass(Fn&& h, const std::vector<double>& lo, const std::vector<double>& hi,
           const QuadratureRule& rule) {
    const int p = static_cast<int>(lo.size());
    std::size_t total = 1;
    double scale = 1.0;
    for (int i = 0; i < p; ++i) {
        total *= rule.nodes.size();
        scale *= (hi[i] - lo[i]);
    }
    std::vector<T> slots(total);
    parallel_for(total, [&](std::size_t flat) {
        std::vector<double> x(p);
        double w = 1.0;
        std::size_t rem = flat;
        for (int i = 0; i < p; ++i) {
            std::size_t k = rem % rule.nodes.size();
            rem /= rule.nodes.size();
            x[i] = lo[i] + (hi[i] - lo[i]) * rule.nodes[k];
            w *= rule.weights[k];
        }
        slots[flat] = static_cast<T>(w * h(x));
    });
    T sum{};
    for (const T& v : slots) sum += v;
    return static_cast<T>(sum * scale);
}

}  // namespace detail

// Tensor Gauss-Legendre integral of h over the box [lo, hi]; the error
// estimate is the order-halving difference.
template <class T = double, class Fn>
Estimate<T> box_integral(Fn&& h, const std::vector<double>& lo, const std::vector<double>& hi,
                         const QuadratureRule& rule) {
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionMismatch("box bounds have mismatched dimensions");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i])) throw DimensionMismatch("box has lower > upper bound");
    Estimate<T> out;
    out.value = detail::box_pass<T>(h, lo, hi, rule);
    T coarse = detail::box_pass<T>(h, lo, hi, rule.halved());
    out.error = detail::magnitude<T>(out.value - coarse);
    return out;
}

// Composite Gauss-Legendre on [a,b] split into unit-length panels. Used for
// radial integrals where a single panel would put complex singularities of the
// integrand too close to the interval.
template <class T = double, class Fn>
T panel_integral_1d(Fn&& h, double a, double b, const QuadratureRule& rule) {
    const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
    const double len = (b - a) / panels;
    T sum{};
    for (int panel = 0; panel < panels; ++panel) {
        double lo = a + panel * len;
        T acc{};
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            acc += static_cast<T>(rule.weights[k] * h(lo + len * rule.nodes[k]));
        sum += static_cast<T>(acc * len);
    }
    return sum;
}

// Composite Gauss-Legendre on (0,1] with panels graded geometrically toward 0,
// resolving integrands with an algebraic endpoint factor u^alpha (alpha > -1).
template <class T = double, class Fn>
T graded_integral_01(Fn&& h, const QuadratureRule& rule, int levels = 28) {
    T sum{};
    double hi = 1.0;
    for (int level = 0; level < levels; ++level) {
        double lo = (level == levels - 1) ? 0.0 : hi * 0.5;
        double len = hi - lo;
        T acc{};
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            acc += static_cast<T>(rule.weights[k] * h(lo + len * rule.nodes[k]));
        sum += static_cast<T>(acc * len);
        hi = lo;
    }
    return sum;
}

}  // namespace zetaspec
