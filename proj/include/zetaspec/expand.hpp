#pragma once

#include <cmath>
#include <vector>

#include "zetaspec/bernoulli.hpp"
#include "zetaspec/cubical.hpp"
#include "zetaspec/multipoly.hpp"
#include "zetaspec/quadrature.hpp"

namespace zetaspec {

// Truncated power series in u = 1/rho, dense, index = power.
namespace useries {

inline std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b,
                               int max_power) {
    std::vector<double> out(max_power + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= max_power; ++i) {
        if (a[i] == 0.0) continue;
        std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(max_power + 1 - i));
        for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline double coeff(const std::vector<double>& a, int power) {
    return (power >= 0 && power < static_cast<int>(a.size())) ? a[power] : 0.0;
}

}  // namespace useries

// The tail series of f at a fixed face point sigma: coefficients of
// r(rho sigma) = sum_{j=1}^{m} f_{(m-j)}(sigma) / (f_top(sigma) rho^j)
// as a polynomial in u = 1/rho. u_coeffs[j-1] is the coefficient of u^j.
struct TailSeries {
    FacePoint sigma;
    double ftop_value = 0.0;
    std::vector<double> u_coeffs;

    // r as a u-polynomial with the constant slot (r has valuation >= 1).
    std::vector<double> u_polynomial() const {
        std::vector<double> r(u_coeffs.size() + 1, 0.0);
        for (std::size_t j = 0; j < u_coeffs.size(); ++j) r[j + 1] = u_coeffs[j];
        return r;
    }
};

// Per-(f,g) compiled evaluation state for the series machinery; build once,
// evaluate at many face points.
class ExpansionContext {
public:
    ExpansionContext(const MultiPoly& f, const MultiPoly& g)
        : p_(f.num_vars()), m_(f.degree()), q_(g.is_zero() ? 0 : g.degree()),
          g_zero_(g.is_zero()) {
        if (g.num_vars() != p_) throw DimensionMismatch("f and g have different variable counts");
        if (m_ <= 0) throw ConstantPolynomial("expansion requires deg(f) >= 1");
        f_parts_.reserve(m_ + 1);
        for (int j = 0; j <= m_; ++j) f_parts_.push_back(f.homogeneous_part(j).compile());
        g_parts_.reserve(q_ + 1);
        for (int j = 0; j <= q_; ++j) g_parts_.push_back(g.homogeneous_part(j).compile());
        f_full_ = f.compile();
        g_full_ = g.compile();
    }

    int num_vars() const { return p_; }
    int f_degree() const { return m_; }
    int g_degree() const { return q_; }
    bool g_is_zero() const { return g_zero_; }
    const CompiledPoly& f_compiled() const { return f_full_; }
    const CompiledPoly& g_compiled() const { return g_full_; }

    double ftop_at(const std::vector<double>& x) const { return f_parts_[m_].eval(x.data()); }

    TailSeries tail_at(const FacePoint& sigma) const {
        std::vector<double> x = embed(sigma);
        TailSeries t;
        t.sigma = sigma;
        t.ftop_value = f_parts_[m_].eval(x.data());
        if (t.ftop_value == 0.0)
            throw TopVanishes("f_top vanishes at a face point (Mahler violation)");
        t.u_coeffs.resize(m_);
        for (int j = 1; j <= m_; ++j)
            t.u_coeffs[j - 1] = f_parts_[m_ - j].eval(x.data()) / t.ftop_value;
        return t;
    }

    // G(u) with G[i] = g_{(q-i)}(sigma), so g(rho sigma) = rho^q * G(1/rho).
    std::vector<double> g_upoly_at(const FacePoint& sigma) const {
        std::vector<double> x = embed(sigma);
        std::vector<double> G(q_ + 1, 0.0);
        if (!g_zero_)
            for (int i = 0; i <= q_; ++i) G[i] = g_parts_[q_ - i].eval(x.data());
        return G;
    }

private:
    int p_, m_, q_;
    bool g_zero_;
    std::vector<CompiledPoly> f_parts_;
    std::vector<CompiledPoly> g_parts_;
    CompiledPoly f_full_;
    CompiledPoly g_full_;
};

inline TailSeries tail_series(const MultiPoly& f, const FacePoint& sigma) {
    return ExpansionContext(f, MultiPoly::constant(f.num_vars(), Rational(1))).tail_at(sigma);
}

// A_{lambda,h}(sigma): the coefficient of rho^{q-lambda-h} in
// g(rho sigma) r(rho sigma)^lambda, i.e. [u^{lambda+h}] G(u) R(u)^lambda.
// Zero outside 0 <= h <= q + (m-1) lambda.
inline double coeff_A(const MultiPoly& f, const MultiPoly& g, int lambda, int h,
                      const FacePoint& sigma) {
    ExpansionContext ctx(f, g);
    if (ctx.g_is_zero()) return 0.0;
    const int m = ctx.f_degree(), q = ctx.g_degree();
    if (lambda < 0 || h < 0 || h > q + (m - 1) * lambda) return 0.0;
    const int K = lambda + h;
    std::vector<double> R = ctx.tail_at(sigma).u_polynomial();
    std::vector<double> cur = ctx.g_upoly_at(sigma);
    cur.resize(K + 1, 0.0);
    for (int l = 0; l < lambda; ++l) cur = useries::mul(cur, R, K);
    return useries::coeff(cur, K);
}

// C_{lambda,N}(sigma): the coefficient of rho^{-p-mN} in g r^lambda;
// identically A_{lambda, q+p+Nm-lambda}.
inline double coeff_C(const MultiPoly& f, const MultiPoly& g, int lambda, int N,
                      const FacePoint& sigma) {
    ExpansionContext ctx(f, g);
    const int m = ctx.f_degree(), q = ctx.g_degree(), p = ctx.num_vars();
    return coeff_A(f, g, lambda, q + p + N * m - lambda, sigma);
}

// The s = 0 integrand: coefficient of rho^{-p} in -g(rho sigma) log(1 + r),
// i.e. [u^{q+p}] of G(u) * sum_{lambda=1}^{q+p} ((-1)^lambda / lambda) R^lambda.
// Truncation is exact: R^lambda has u-valuation lambda > q+p beyond the range.
// Its face integral equals deg(f) * Z(0; f, g).
inline double log_coeff(const MultiPoly& f, const MultiPoly& g, const FacePoint& sigma) {
    ExpansionContext ctx(f, g);
    if (ctx.g_is_zero()) return 0.0;
    const int q = ctx.g_degree(), p = ctx.num_vars();
    const int K = q + p;
    TailSeries tail = ctx.tail_at(sigma);
    if (tail.ftop_value < 0.0)
        throw TopVanishes("f_top is negative at a face point; principal log unavailable");
    std::vector<double> R = tail.u_polynomial();
    std::vector<double> cur = ctx.g_upoly_at(sigma);
    cur.resize(K + 1, 0.0);
    double acc = 0.0;
    double sign = 1.0;
    for (int lambda = 1; lambda <= K; ++lambda) {
        cur = useries::mul(cur, R, K);
        sign = -sign;
        acc += sign / lambda * useries::coeff(cur, K);
    }
    return acc;
}

// Smallest w with sum_j c_j / w^j <= 1/2, where c_j is the largest
// |f_{(m-j)}(sigma)/f_top(sigma)| over the sampled face nodes (rule nodes plus
// the axis endpoints 0 and 1), then doubled as a safety margin. Minimum 1.
inline double split_radius(const MultiPoly& f, const QuadratureRule& rule) {
    ExpansionContext ctx(f, MultiPoly::constant(f.num_vars(), Rational(1)));
    const int p = ctx.num_vars(), m = ctx.f_degree();
    std::vector<double> axis = rule.nodes;
    axis.push_back(0.0);
    axis.push_back(1.0);

    std::vector<double> cmax(m, 0.0);
    std::vector<std::size_t> idx(p - 1, 0);
    for (int face = 0; face < p; ++face) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            FacePoint sigma;
            sigma.face = face + 1;
            sigma.coords.resize(p - 1);
            for (int i = 0; i < p - 1; ++i) sigma.coords[i] = axis[idx[i]];
            TailSeries t = ctx.tail_at(sigma);
            for (int j = 0; j < m; ++j) cmax[j] = std::max(cmax[j], std::abs(t.u_coeffs[j]));
            int a = 0;
            while (a < p - 1) {
                if (++idx[a] < axis.size()) break;
                idx[a++] = 0;
            }
            if (a == p - 1) break;
        }
        if (p == 1) break;
    }

    bool all_zero = true;
    for (double c : cmax)
        if (c != 0.0) all_zero = false;
    if (all_zero) return 1.0;  // homogeneous f: r == 0

    auto bound = [&](double w) {
        double s = 0.0, wp = 1.0;
        for (int j = 0; j < m; ++j) {
            wp *= w;
            s += cmax[j] / wp;
        }
        return s;
    };
    double hi = 1.0;
    while (bound(hi) > 0.5) hi *= 2.0;
    double lo = hi * 0.5;
    if (bound(lo) <= 0.5) lo = 1e-6;  // already small at w=1
    for (int iter = 0; iter < 100; ++iter) {
        double mid = 0.5 * (lo + hi);
        (bound(mid) <= 0.5 ? hi : lo) = mid;
    }
    return std::max(1.0, 2.0 * hi);
}

}  // namespace zetaspec
