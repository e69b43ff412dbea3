#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "zetaspec/expand.hpp"

namespace zetaspec {

using Cplx = std::complex<double>;

enum class Method { ValorZ, LogForm, GeneralS, Oracle, Bernoulli };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ValorZ: return "VALOR_Z";
        case Method::LogForm: return "LOG_FORM";
        case Method::GeneralS: return "GENERAL_S";
        case Method::Oracle: return "ORACLE";
        case Method::Bernoulli: return "BERNOULLI";
    }
    return "?";
}

struct ValueParams {
    std::optional<int> N;
    std::optional<Cplx> s;
    int order = 0;
    std::optional<double> w;
    std::optional<int> k;
};

struct SpecialValue {
    Cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    Method method = Method::ValorZ;
    ValueParams params;
};

struct EngineOptions {
    bool assume_mahler = false;
    std::optional<double> w_override;
    int mahler_grid_density = 8;
    double residual_threshold = 1e-4;
    double pole_tolerance = 1e-9;
};

namespace detail {

inline std::string point_string(const std::vector<Rational>& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

inline Cplx cpow_pos(double base, const Cplx& expo) {
    return std::exp(expo * std::log(base));
}

inline Cplx binom_upper(const Cplx& s, int lambda) {  // binom(-s, lambda)
    Cplx acc(1.0, 0.0);
    for (int j = 0; j < lambda; ++j) acc *= (-s - static_cast<double>(j));
    for (int j = 2; j <= lambda; ++j) acc /= static_cast<double>(j);
    return acc;
}

inline double binom_real(double x, int lambda) {  // binom(x, lambda)
    double acc = 1.0;
    for (int j = 0; j < lambda; ++j) acc *= (x - j);
    for (int j = 2; j <= lambda; ++j) acc /= j;
    return acc;
}

}  // namespace detail

inline void require_mahler(const MultiPoly& f, const EngineOptions& opts) {
    MahlerReport rep = check_mahler(f, opts.mahler_grid_density);
    if (rep.verdict == MahlerVerdict::Violated) {
        throw MahlerViolation("Mahler's Hypothesis violated; witness " +
                              detail::point_string(*rep.witness));
    }
    if (rep.verdict == MahlerVerdict::Likely && !opts.assume_mahler) {
        throw MahlerViolation(
            "Mahler's Hypothesis could not be proven (verdict LIKELY); "
            "pass --assume-mahler to proceed");
    }
}

// ---------------------------------------------------------------------------
// Special values at s = -N.
// ---------------------------------------------------------------------------

// Z(-N; f, g) = (1/m) sum_{lambda=N+ceil(p/m)}^{q+p+Nm}
//   [(-1)^{lambda-N} / ((lambda-N) binom(lambda,N))]
//   * \int_{faces} C_{lambda,N}(sigma) f_top(sigma)^N dsigma.
inline SpecialValue Z_special(const MultiPoly& f, const MultiPoly& g, int N,
                              const QuadratureRule& rule, const EngineOptions& opts = {}) {
    if (N < 0) throw DimensionMismatch("N must be non-negative");
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    SpecialValue out;
    out.method = Method::ValorZ;
    out.params.N = N;
    out.params.order = rule.order;
    if (g.is_zero()) return out;
    require_mahler(f, opts);

    ExpansionContext ctx(f, g);
    const int p = ctx.num_vars(), m = ctx.f_degree(), q = ctx.g_degree();
    const int lambda_lo = N + detail::ceil_div(p, m);
    const int lambda_hi = q + p + N * m;
    assert(lambda_hi >= lambda_lo);
    const int K = q + p + m * N;

    auto integrand = [&](const FacePoint& sigma) -> double {
        TailSeries tail = ctx.tail_at(sigma);
        if (tail.ftop_value < 0.0)
            throw TopVanishes("f_top is negative at a face point");
        std::vector<double> R = tail.u_polynomial();
        std::vector<double> cur = ctx.g_upoly_at(sigma);
        cur.resize(K + 1, 0.0);
        double acc = 0.0;
        for (int lambda = 1; lambda <= lambda_hi; ++lambda) {
            cur = useries::mul(cur, R, K);
            if (lambda < lambda_lo) continue;
            double coef = ((lambda - N) % 2 ? -1.0 : 1.0) /
                          ((lambda - N) * detail::binom_real(lambda, N));
            acc += coef * useries::coeff(cur, K);
        }
        return acc * std::pow(tail.ftop_value, N);
    };

    Estimate<double> est = face_integral<double>(integrand, p, rule);
    out.value = est.value / m;
    out.error_estimate = est.error / m;
    return out;
}

// Z(0; f, g) through the log form: face integral of the coefficient of
// rho^{-p} in -g log(1 + r), divided by deg(f).
inline SpecialValue Z_zero_log(const MultiPoly& f, const MultiPoly& g,
                               const QuadratureRule& rule, const EngineOptions& opts = {}) {
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    SpecialValue out;
    out.method = Method::LogForm;
    out.params.N = 0;
    out.params.order = rule.order;
    if (g.is_zero()) return out;
    require_mahler(f, opts);

    ExpansionContext ctx(f, g);
    const int p = ctx.num_vars(), m = ctx.f_degree(), q = ctx.g_degree();
    const int K = q + p;

    auto integrand = [&](const FacePoint& sigma) -> double {
        TailSeries tail = ctx.tail_at(sigma);
        if (tail.ftop_value < 0.0)
            throw TopVanishes("f_top is negative at a face point; principal log unavailable");
        std::vector<double> R = tail.u_polynomial();
        std::vector<double> cur = ctx.g_upoly_at(sigma);
        cur.resize(K + 1, 0.0);
        double acc = 0.0, sign = 1.0;
        for (int lambda = 1; lambda <= K; ++lambda) {
            cur = useries::mul(cur, R, K);
            sign = -sign;
            acc += sign / lambda * useries::coeff(cur, K);
        }
        return acc;
    };

    Estimate<double> est = face_integral<double>(integrand, p, rule);
    out.value = est.value / m;
    out.error_estimate = est.error / m;
    return out;
}

// ---------------------------------------------------------------------------
// Pole candidates.
// ---------------------------------------------------------------------------

// Possible (at most simple) poles sit at s = (deg(g)+p-ell)/deg(f), ell >= 0;
// non-positive integers are excluded, where regularity is guaranteed.
struct PoleCandidate {
    Rational s0;
    int ell = 0;
    bool excluded = false;
};

inline bool is_nonpositive_integer(const Rational& r) {
    return r <= 0 && denominator(r) == 1;
}

inline std::vector<PoleCandidate> pole_candidates(const MultiPoly& f, const MultiPoly& g,
                                                  int ell_max) {
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    const int m = f.degree();
    if (m <= 0) throw ConstantPolynomial("pole set requires deg(f) >= 1");
    if (g.is_zero()) return {};
    const int q = g.degree(), p = f.num_vars();
    std::vector<PoleCandidate> out;
    out.reserve(ell_max + 1);
    for (int ell = 0; ell <= ell_max; ++ell) {
        PoleCandidate c;
        c.s0 = Rational(q + p - ell, m);
        c.ell = ell;
        c.excluded = is_nonpositive_integer(c.s0);
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// General-s continuation: Z = Z1 + k binom(-s,k) N_k + sum binom(-s,l) M_l.
// ---------------------------------------------------------------------------

struct MTerm {
    int lambda = 0;
    Cplx m_value{0.0, 0.0};  // raw M_lambda(s,w); defined only off-integer s
    bool m_value_defined = false;
    Cplx addend{0.0, 0.0};   // binom(-s,lambda) * M_lambda, continued at s = -N
};

struct ContinuationBreakdown {
    Cplx z1{0.0, 0.0};
    double z1_error = 0.0;
    Cplx nk{0.0, 0.0};
    double nk_error = 0.0;
    Cplx nk_addend{0.0, 0.0};
    std::vector<MTerm> m_terms;
    double w = 0.0;
    int k = 0;
    int N = 0;
};

namespace detail {

// All face integrals F[lambda][h] = \int A_{lambda,h}(sigma) f_top(sigma)^{-s},
// for lambda = 0..Lambda, h = 0..q+(m-1)lambda, in one vector-valued pass.
struct FaceTable {
    std::vector<std::size_t> offset;  // per lambda
    std::vector<Cplx> value;
    std::vector<double> error;
    std::size_t index(int lambda, int h) const { return offset[lambda] + h; }
};

inline FaceTable face_table(const ExpansionContext& ctx, const Cplx& s, int Lambda,
                            const QuadratureRule& rule) {
    const int p = ctx.num_vars(), m = ctx.f_degree(), q = ctx.g_degree();
    FaceTable t;
    t.offset.resize(Lambda + 1);
    std::size_t dim = 0;
    for (int lambda = 0; lambda <= Lambda; ++lambda) {
        t.offset[lambda] = dim;
        dim += q + (m - 1) * lambda + 1;
    }
    const int K = m * Lambda + q;
    auto h_vec = [&](const FacePoint& sigma, Cplx* out) {
        TailSeries tail = ctx.tail_at(sigma);
        if (tail.ftop_value <= 0.0)
            throw TopVanishes("f_top is not positive at a face point");
        Cplx ftop_pow = cpow_pos(tail.ftop_value, -s);
        std::vector<double> R = tail.u_polynomial();
        std::vector<double> cur = ctx.g_upoly_at(sigma);
        cur.resize(K + 1, 0.0);
        for (int lambda = 0; lambda <= Lambda; ++lambda) {
            if (lambda > 0) cur = useries::mul(cur, R, K);
            const int hmax = q + (m - 1) * lambda;
            for (int h = 0; h <= hmax; ++h)
                out[t.offset[lambda] + h] = useries::coeff(cur, lambda + h) * ftop_pow;
        }
    };
    auto [vals, errs] = face_integral_vec<Cplx>(h_vec, p, dim, rule);
    t.value = std::move(vals);
    t.error = std::move(errs);
    return t;
}

}  // namespace detail

inline std::pair<SpecialValue, ContinuationBreakdown> Z_general(
    const MultiPoly& f, const MultiPoly& g, Cplx s, const QuadratureRule& rule,
    const EngineOptions& opts = {}) {
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    SpecialValue out;
    out.method = Method::GeneralS;
    out.params.s = s;
    out.params.order = rule.order;
    ContinuationBreakdown br;
    if (g.is_zero()) return {out, br};
    require_mahler(f, opts);

    ExpansionContext ctx(f, g);
    const int p = ctx.num_vars(), m = ctx.f_degree(), q = ctx.g_degree();

    // Regular non-positive integers: snap and evaluate the recombination in
    // limit form (the raw product binom(-s,lambda) M_lambda is 0 * inf there).
    bool integer_path = false;
    int N = std::max(0, static_cast<int>(std::ceil(-s.real())));
    if (std::abs(s.imag()) <= opts.pole_tolerance && s.real() <= opts.pole_tolerance) {
        long J = std::lround(-s.real());
        if (J >= 0 && std::abs(s.real() + static_cast<double>(J)) <= opts.pole_tolerance) {
            integer_path = true;
            N = static_cast<int>(J);
            s = Cplx(-static_cast<double>(J), 0.0);
            out.params.s = s;
        }
    }

    const int Lambda = N * m + q + p;
    const int k = Lambda + 1;

    // Pole proximity: every reachable denominator has ell = lambda + h.
    const int ell_reach = m * Lambda + q;
    for (int ell = 0; ell <= ell_reach; ++ell) {
        Rational s0(q + p - ell, m);
        if (is_nonpositive_integer(s0)) continue;
        double s0d = to_double(s0);
        if (std::abs(s - Cplx(s0d, 0.0)) < opts.pole_tolerance)
            throw PoleAt(s0d, to_string(s0));
    }

    const double w = opts.w_override ? *opts.w_override : split_radius(f, rule);
    br.w = w;
    br.k = k;
    br.N = N;
    out.params.w = w;
    out.params.k = k;
    out.params.N = N;

    // Z1: compact piece over [0,w] x faces.
    auto z1_pass = [&](const QuadratureRule& r) -> Cplx {
        auto h_vec = [&](const FacePoint& sigma, Cplx* o) {
            std::vector<double> dir = embed(sigma);
            std::vector<double> x(p);
            o[0] = panel_integral_1d<Cplx>(
                [&](double rho) -> Cplx {
                    for (int i = 0; i < p; ++i) x[i] = rho * dir[i];
                    double fv = ctx.f_compiled().eval(x.data());
                    if (fv <= 0.0)
                        throw MahlerViolation("f is not positive at a quadrature node");
                    double gv = ctx.g_compiled().eval(x.data());
                    double rp = (p == 1) ? 1.0 : std::pow(rho, p - 1);
                    return rp * gv * detail::cpow_pos(fv, -s);
                },
                0.0, w, r);
        };
        return detail::face_pass<Cplx>(h_vec, p, 1, r)[0];
    };
    br.z1 = z1_pass(rule);
    br.z1_error = std::abs(br.z1 - z1_pass(rule.halved()));

    // N_k: Taylor remainder tail, rho = w/u with graded panels toward u = 0.
    auto nk_pass = [&](const QuadratureRule& r) -> Cplx {
        auto h_vec = [&](const FacePoint& sigma, Cplx* o) {
            TailSeries tail = ctx.tail_at(sigma);
            if (tail.ftop_value <= 0.0)
                throw TopVanishes("f_top is not positive at a face point");
            std::vector<double> dir = embed(sigma);
            std::vector<double> xg(p);
            // r(w/u * sigma) as a polynomial in u.
            std::vector<double> rc(tail.u_coeffs.size());
            double wp = 1.0;
            for (std::size_t j = 0; j < rc.size(); ++j) {
                wp *= w;
                rc[j] = tail.u_coeffs[j] / wp;
            }
            Cplx ftop_pow = detail::cpow_pos(tail.ftop_value, -s);
            o[0] = graded_integral_01<Cplx>(
                [&](double u) -> Cplx {
                    double rho = w / u;
                    double rv = 0.0;
                    for (std::size_t j = rc.size(); j-- > 0;) rv = (rv + rc[j]) * u;
                    for (int i = 0; i < p; ++i) xg[i] = rho * dir[i];
                    double gv = ctx.g_compiled().eval(xg.data());
                    Cplx inner(0.0, 0.0);
                    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                        double tnode = r.nodes[i];
                        double poly = (k > 1) ? std::pow(1.0 - tnode, k - 1) : 1.0;
                        inner += r.weights[i] * poly *
                                 std::exp(-(s + static_cast<double>(k)) * std::log(1.0 + tnode * rv));
                    }
                    Cplx radial = std::exp((Cplx(p - 1, 0.0) - s * static_cast<double>(m)) *
                                           std::log(rho));
                    return ftop_pow * radial * gv * std::pow(rv, k) * inner * (w / (u * u));
                },
                r);
        };
        return detail::face_pass<Cplx>(h_vec, p, 1, r)[0];
    };
    br.nk = nk_pass(rule);
    br.nk_error = std::abs(br.nk - nk_pass(rule.halved()));
    // At s = -N the prefactor k binom(N,k) is exactly zero (k > N).
    Cplx k_binom = static_cast<double>(k) * detail::binom_upper(s, k);
    br.nk_addend = k_binom * br.nk;

    // M terms through the meromorphic closed form.
    detail::FaceTable table = detail::face_table(ctx, s, Lambda, rule);
    Cplx msum(0.0, 0.0);
    double m_error = 0.0;
    br.m_terms.reserve(Lambda + 1);
    for (int lambda = 0; lambda <= Lambda; ++lambda) {
        MTerm term;
        term.lambda = lambda;
        const int hmax = q + (m - 1) * lambda;
        if (!integer_path || lambda <= N) {
            Cplx mval(0.0, 0.0);
            double merr = 0.0;
            for (int h = 0; h <= hmax; ++h) {
                Cplx expo = Cplx(q + p - lambda - h, 0.0) - s * static_cast<double>(m);
                Cplx den = s * static_cast<double>(m) + static_cast<double>(lambda + h - q - p);
                Cplx coef = detail::cpow_pos(w, expo) / den;
                mval += coef * table.value[table.index(lambda, h)];
                merr += std::abs(coef) * table.error[table.index(lambda, h)];
            }
            term.m_value = mval;
            term.m_value_defined = true;
            Cplx b = detail::binom_upper(s, lambda);
            term.addend = b * mval;
            m_error += std::abs(b) * merr;
        } else {
            // limit of binom(-s,lambda) M_lambda at s = -N: only the residue
            // survives, at h = q + p + Nm - lambda when in range.
            const int hstar = q + p + N * m - lambda;
            if (hstar >= 0 && hstar <= hmax) {
                double c = ((lambda - N) % 2 ? -1.0 : 1.0) /
                           ((lambda - N) * detail::binom_real(lambda, N));
                term.addend = (c / m) * table.value[table.index(lambda, hstar)];
                m_error += std::abs(c / m) * table.error[table.index(lambda, hstar)];
            }
        }
        msum += term.addend;
        br.m_terms.push_back(std::move(term));
    }

    out.value = br.z1 + br.nk_addend + msum;
    out.error_estimate = br.z1_error + std::abs(k_binom) * br.nk_error + m_error;
    return {out, br};
}

// ---------------------------------------------------------------------------
// Residues.
// ---------------------------------------------------------------------------

// Residue of Z(s;f,g) at an unexcluded candidate s0 = (q+p-ell)/m: from the
// meromorphic form, sum over lambda with h = ell-lambda in range of
// binom(-s0,lambda) (1/m) \int A_{lambda,ell-lambda} f_top^{-s0}. Z1 and N_k
// are analytic there and contribute nothing.
inline Estimate<double> residue(const MultiPoly& f, const MultiPoly& g, const Rational& s0,
                                const QuadratureRule& rule, const EngineOptions& opts = {}) {
    if (f.num_vars() != g.num_vars())
        throw DimensionMismatch("f and g have different variable counts");
    const int m = f.degree();
    if (m <= 0) throw ConstantPolynomial("residue requires deg(f) >= 1");
    if (g.is_zero()) throw NotACandidate("g = 0: Z is identically zero and has no poles");
    const int q = g.degree(), p = f.num_vars();

    Rational ell_rat = Rational(q + p) - s0 * m;
    if (denominator(ell_rat) != 1 || ell_rat < 0)
        throw NotACandidate("s0 = " + to_string(s0) + " is not of the form (q+p-ell)/m");
    if (is_nonpositive_integer(s0))
        throw NotACandidate("s0 = " + to_string(s0) +
                            " is an excluded candidate (regular at non-positive integers)");
    const int ell = numerator(ell_rat).template convert_to<int>();

    require_mahler(f, opts);
    ExpansionContext ctx(f, g);

    const double s0d = to_double(s0);
    const int N = std::max(0, static_cast<int>(std::ceil(-s0d - 1e-12)));
    const int Lambda = N * m + q + p;
    detail::FaceTable table = detail::face_table(ctx, Cplx(s0d, 0.0), Lambda, rule);

    Estimate<double> out;
    for (int lambda = 0; lambda <= Lambda; ++lambda) {
        const int h = ell - lambda;
        if (h < 0 || h > q + (m - 1) * lambda) continue;
        double b = detail::binom_real(-s0d, lambda) / m;
        out.value += b * table.value[table.index(lambda, h)].real();
        out.error += std::abs(b) * table.error[table.index(lambda, h)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product rule for zeta integrals at s = 0.
// ---------------------------------------------------------------------------

struct ProductRuleReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    double discrepancy = 0.0;
    double combined_error = 0.0;
    bool consistent = false;
    double product_value = 0.0;               // Z(0; prod f_j, g)
    std::vector<double> factor_values;        // Z(0; f_j, g)
};

// Checks deg(prod f_j) Z(0; prod f_j, g) = sum_j deg(f_j) Z(0; f_j, g), both
// sides computed independently through the full pipeline.
inline ProductRuleReport product_rule_Z(const std::vector<MultiPoly>& factors,
                                        const MultiPoly& g, const QuadratureRule& rule,
                                        const EngineOptions& opts = {}) {
    if (factors.empty()) throw DimensionMismatch("product rule needs at least one factor");
    ProductRuleReport rep;
    MultiPoly prod = MultiPoly::constant(factors[0].num_vars(), Rational(1));
    for (std::size_t j = 0; j < factors.size(); ++j) {
        SpecialValue v;
        try {
            v = Z_special(factors[j], g, 0, rule, opts);
        } catch (const MahlerViolation& e) {
            throw MahlerViolation("factor " + std::to_string(j + 1) + ": " + e.what());
        }
        rep.factor_values.push_back(v.value.real());
        rep.rhs += factors[j].degree() * v.value.real();
        rep.rhs_error += factors[j].degree() * v.error_estimate;
        prod = prod * factors[j];
    }
    SpecialValue pv;
    try {
        pv = Z_special(prod, g, 0, rule, opts);
    } catch (const MahlerViolation& e) {
        throw MahlerViolation(std::string("product: ") + e.what());
    }
    rep.product_value = pv.value.real();
    rep.lhs = prod.degree() * pv.value.real();
    rep.lhs_error = prod.degree() * pv.error_estimate;
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    rep.combined_error = rep.lhs_error + rep.rhs_error;
    rep.consistent = rep.discrepancy <= rep.combined_error + 1e-9;
    return rep;
}

}  // namespace zetaspec
