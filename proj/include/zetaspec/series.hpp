#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zetaspec/values.hpp"

namespace zetaspec {

// ---------------------------------------------------------------------------
// The shift polynomial a -> Z(-N; f_a, g_a) by tensor Chebyshev interpolation.
// ---------------------------------------------------------------------------

enum class ShiftKind { Integral, Series };

struct ShiftPolyResult {
    CoeffTable table;
    double residual = 0.0;      // max interpolation defect at held-out points
    double dropped_mass = 0.0;  // largest coefficient beyond the degree bound
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<double> chebyshev_nodes_01(int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 0.5 * (1.0 + std::cos(M_PI * (2 * i + 1) / (2.0 * n)));
    return x;
}

// Monomial coefficients of the interpolant through (nodes, values), by Newton
// divided differences.
inline std::vector<double> newton_to_monomial(const std::vector<double>& nodes,
                                              std::vector<double> dd) {
    const int n = static_cast<int>(nodes.size());
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
    std::vector<double> poly{dd[n - 1]};
    for (int i = n - 2; i >= 0; --i) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= nodes[i] * poly[k];
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    poly.resize(n, 0.0);
    return poly;
}

// values-at-nodes -> monomial-coefficients matrix, row-major.
inline std::vector<double> interp_matrix(const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> M(n * n, 0.0);
    std::vector<double> unit(n, 0.0);
    for (int j = 0; j < n; ++j) {
        unit.assign(n, 0.0);
        unit[j] = 1.0;
        std::vector<double> col = newton_to_monomial(nodes, unit);
        for (int i = 0; i < n; ++i) M[i * n + j] = col[i];
    }
    return M;
}

// Applies M along one axis of a flat tensor with p axes of extent n each;
// with absolute=true uses |M| (worst-case error transport).
inline void apply_axis(std::vector<double>& T, int p, int n, int axis,
                       const std::vector<double>& M, bool absolute) {
    (void)p;
    std::size_t stride = 1;
    for (int i = 0; i < axis; ++i) stride *= n;
    const std::size_t block = stride * n;
    std::vector<double> in(n), out(n);
    for (std::size_t base = 0; base < T.size(); base += block)
        for (std::size_t off = 0; off < stride; ++off) {
            for (int k = 0; k < n; ++k) in[k] = T[base + off + k * stride];
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) {
                    double c = M[i * n + j];
                    s += (absolute ? std::abs(c) : c) * in[j];
                }
                out[i] = s;
            }
            for (int k = 0; k < n; ++k) T[base + off + k * stride] = out[k];
        }
}

}  // namespace detail

// Evaluates a -> Z(-N; f_a, g_a) (kind Integral) or a -> zeta(-N; f_a, g_a)
// (kind Series, cross-check only) on a tensor Chebyshev grid in [0,1]^p with
// D+1 nodes per axis, D = N deg(f) + deg(g) + p, and recovers the monomial
// coefficients by per-axis interpolation. Coefficients of total degree > D are
// measured and dropped.
inline ShiftPolyResult shift_value_poly(const MultiPoly& f, const MultiPoly& g, int N,
                                        ShiftKind kind, const QuadratureRule& rule,
                                        const EngineOptions& opts = {});

// zeta(-N; f, g) = sum_L c_L B_L over the integral shift polynomial.
inline SpecialValue zeta_special(const MultiPoly& f, const MultiPoly& g, int N,
                                 const QuadratureRule& rule, const EngineOptions& opts = {}) {
    ShiftPolyResult spr = shift_value_poly(f, g, N, ShiftKind::Integral, rule, opts);
    Substitution sub = bernoulli_substitute(spr.table);
    SpecialValue out;
    out.value = sub.value;
    out.error_estimate = sub.error;
    out.method = Method::Bernoulli;
    out.params.N = N;
    out.params.order = rule.order;
    return out;
}

inline ShiftPolyResult shift_value_poly(const MultiPoly& f, const MultiPoly& g, int N,
                                        ShiftKind kind, const QuadratureRule& rule,
                                        const EngineOptions& opts) {
    if (N < 0) throw DimensionMismatch("N must be non-negative");
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    const int p = f.num_vars();

    ShiftPolyResult out;
    out.table.num_vars = p;
    if (g.is_zero()) {
        out.table.degree_bound = 0;
        return out;
    }
    require_mahler(f, opts);
    const int m = f.degree(), q = g.degree();
    const int D = N * m + q + p;
    out.table.degree_bound = D;
    const int n = D + 1;

    // f_a stays in the Mahler class for a in [0,1]^p (closed under
    // non-negative shifts), so per-node re-checks are skipped.
    EngineOptions node_opts = opts;
    node_opts.assume_mahler = true;

    auto value_at = [&](const std::vector<Rational>& a) -> SpecialValue {
        MultiPoly fa = f.shift(a), ga = g.shift(a);
        if (kind == ShiftKind::Integral) return Z_special(fa, ga, N, rule, node_opts);
        return zeta_special(fa, ga, N, rule, node_opts);
    };

    const std::vector<double> nodes = detail::chebyshev_nodes_01(n);
    std::size_t total = 1;
    for (int i = 0; i < p; ++i) total *= n;

    std::vector<double> values(total), errors(total);
    std::vector<Rational> a(p);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int i = 0; i < p; ++i) {
            a[i] = rational_from_double(nodes[rem % n]);
            rem /= n;
        }
        SpecialValue v = value_at(a);
        values[flat] = v.value.real();
        errors[flat] = v.error_estimate;
    }

    const std::vector<double> M = detail::interp_matrix(nodes);
    for (int axis = 0; axis < p; ++axis) {
        detail::apply_axis(values, p, n, axis, M, false);
        detail::apply_axis(errors, p, n, axis, M, true);
    }

    for (std::size_t flat = 0; flat < total; ++flat) {
        MultiIndex L(p);
        std::size_t rem = flat;
        for (int i = 0; i < p; ++i) {
            L[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        if (total_degree(L) > D) {
            out.dropped_mass = std::max(out.dropped_mass, std::abs(values[flat]));
            continue;
        }
        out.table.set(std::move(L), values[flat], errors[flat]);
    }
    if (out.dropped_mass > 1e-8)
        out.warnings.push_back("dropped coefficient mass above tolerance: " +
                               std::to_string(out.dropped_mass));

    // Interpolation defect at held-out points.
    const double golden = 0.6180339887498949;
    for (int j = 0; j < 3; ++j) {
        std::vector<double> pt(p);
        std::vector<Rational> ar(p);
        for (int i = 0; i < p; ++i) {
            double v = std::fmod(0.41 + golden * (j * p + i + 1), 1.0);
            pt[i] = v;
            ar[i] = rational_from_double(v);
        }
        double defect = std::abs(out.table.eval(pt) - value_at(ar).value.real());
        out.residual = std::max(out.residual, defect);
    }
    if (out.residual > opts.residual_threshold)
        throw InterpolationIllConditioned("interpolation residual " +
                                          std::to_string(out.residual) + " exceeds threshold");
    return out;
}

// zeta(-N; f_a, g_a) = sum_L c_L B_L(a) for a in [0,1]^p, where f_a is
// guaranteed to stay in the Mahler class.
inline SpecialValue zeta_shift(const MultiPoly& f, const MultiPoly& g, int N,
                               const std::vector<Rational>& a, const QuadratureRule& rule,
                               const EngineOptions& opts = {}) {
    if (static_cast<int>(a.size()) != f.num_vars())
        throw DimensionMismatch("shift vector has wrong dimension");
    for (const Rational& ai : a)
        if (ai < 0 || ai > 1)
            throw MahlerViolation(
                "zeta_shift requires a in [0,1]^p, where f_a stays in the Mahler class");
    ShiftPolyResult spr = shift_value_poly(f, g, N, ShiftKind::Integral, rule, opts);
    Substitution sub = bernoulli_basis_eval(spr.table, a);
    SpecialValue out;
    out.value = sub.value;
    out.error_estimate = sub.error;
    out.method = Method::Bernoulli;
    out.params.N = N;
    out.params.order = rule.order;
    return out;
}

// ---------------------------------------------------------------------------
// Direct summation oracle over max-norm shells.
// ---------------------------------------------------------------------------

namespace detail {

// Visits every lattice point with max-norm exactly n: coordinate i is the
// first one pinned to n, earlier ones range over [0,n-1], later over [0,n].
template <class Fn>
void for_each_shell_point(int p, long n, Fn&& visit) {
    std::vector<double> x(p);
    if (n == 0) {
        std::fill(x.begin(), x.end(), 0.0);
        visit(x);
        return;
    }
    for (int pin = 0; pin < p; ++pin) {
        std::vector<long> idx(p, 0);
        x[pin] = static_cast<double>(n);
        for (;;) {
            for (int i = 0; i < p; ++i)
                if (i != pin) x[i] = static_cast<double>(idx[i]);
            visit(x);
            int i = 0;
            for (; i < p; ++i) {
                if (i == pin) continue;
                long limit = (i < pin) ? n - 1 : n;
                if (++idx[i] <= limit) break;
                idx[i] = 0;
            }
            if (i == p) break;
        }
    }
}

}  // namespace detail

// Partial sums of zeta(s; f, g) over max-norm shells with a heuristic tail
// estimate from the shell-decay exponent q - m Re(s) + p - 1.
inline SpecialValue direct_sum(const MultiPoly& f, const MultiPoly& g, Cplx s, double tol,
                               const EngineOptions& opts = {}) {
    (void)opts;
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    SpecialValue out;
    out.method = Method::Oracle;
    out.params.s = s;
    if (g.is_zero()) return out;
    const int p = f.num_vars(), m = f.degree(), q = g.degree();
    if (m <= 0) throw ConstantPolynomial("direct summation requires deg(f) >= 1");
    const double bound = static_cast<double>(q + p) / m + 0.1;
    if (!(s.real() > bound))
        throw NotConvergent("Re(s) must exceed (deg(g)+p)/deg(f) + 0.1 = " +
                            std::to_string(bound));

    const CompiledPoly cf = f.compile(), cg = g.compile();
    const double decay = q + p - 1 - m * s.real();  // shell exponent, < -1.1 here

    Cplx total(0.0, 0.0);
    double tail = 0.0;
    double last_mag = 0.0;
    long long points_budget = 400000000LL;
    std::vector<double> x1(1);
    for (long n = 0;; ++n) {
        Cplx shell(0.0, 0.0);
        long long visited = 0;
        auto accumulate = [&](const std::vector<double>& x) {
            double fv = cf.eval(x.data());
            if (fv <= 0.0)
                throw MahlerViolation("f is not positive at a lattice point");
            shell += cg.eval(x.data()) * detail::cpow_pos(fv, -s);
            ++visited;
        };
        if (p == 1) {
            x1[0] = static_cast<double>(n);
            accumulate(x1);
        } else {
            detail::for_each_shell_point(p, n, accumulate);
        }
        total += shell;
        last_mag = std::max(std::abs(shell), 0.5 * last_mag);
        if (n >= 8) {
            tail = last_mag * static_cast<double>(n) / (-decay - 1.0);
            if (tail < tol) break;
        }
        points_budget -= visited;
        if (points_budget < 0)
            throw NotConvergent("tail tolerance unreachable within the summation budget");
    }
    out.value = total;
    out.error_estimate = tail;
    return out;
}

// ---------------------------------------------------------------------------
// Numeric Raabe check: Z(s;f,g) = \int_{[0,1]^p} zeta(s;f_t,g_t) dt.
// ---------------------------------------------------------------------------

struct RaabeReport {
    Cplx integral_side{0.0, 0.0};
    double integral_error = 0.0;
    Cplx series_side{0.0, 0.0};
    double series_error = 0.0;
    double discrepancy = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline RaabeReport raabe_check(const MultiPoly& f, const MultiPoly& g, Cplx s,
                               const QuadratureRule& rule, double tol,
                               const EngineOptions& opts = {}) {
    RaabeReport rep;
    rep.tol = tol;

    auto zres = Z_general(f, g, s, rule, opts);
    rep.integral_side = zres.first.value;
    rep.integral_error = zres.first.error_estimate;

    const double node_tol = std::max(tol * 0.1, 1e-10);
    std::vector<double> lo(f.num_vars(), 0.0), hi(f.num_vars(), 1.0);
    Estimate<Cplx> box = box_integral<Cplx>(
        [&](const std::vector<double>& t) -> Cplx {
            std::vector<Rational> a(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) a[i] = rational_from_double(t[i]);
            return direct_sum(f.shift(a), g.shift(a), s, node_tol, opts).value;
        },
        lo, hi, rule);
    rep.series_side = box.value;
    rep.series_error = box.error + node_tol;

    rep.discrepancy = std::abs(rep.integral_side - rep.series_side);
    rep.pass = rep.discrepancy <= tol;
    return rep;
}

}  // namespace zetaspec
