#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "zetaspec/multipoly.hpp"

namespace zetaspec {

// Exact univariate polynomial, index = power of t.
using RatPoly = std::vector<Rational>;

inline Rational eval_poly(const RatPoly& poly, const Rational& t) {
    Rational acc(0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
    return acc;
}

// Cache of Bernoulli polynomials built straight from the defining recurrence:
// B_0(t) = 1, B_j'(t) = j B_{j-1}(t), and the constant fixed by
// \int_0^1 B_j(t) dt = 0. Append-only behind a lock.
class BernoulliTable {
public:
    static const RatPoly& poly(int j) {
        auto& self = instance();
        std::lock_guard<std::mutex> lock(self.mutex_);
        self.grow(j);
        return self.polys_[j];
    }
    static Rational number(int j) {
        auto& self = instance();
        std::lock_guard<std::mutex> lock(self.mutex_);
        self.grow(j);
        return self.polys_[j].empty() ? Rational(0) : self.polys_[j][0];  // B_j = B_j(0)
    }

private:
    static BernoulliTable& instance() {
        static BernoulliTable table;
        return table;
    }
    void grow(int j) {
        if (j < 0) throw DimensionMismatch("Bernoulli index must be non-negative");
        if (polys_.empty()) polys_.push_back(RatPoly{Rational(1)});
        while (static_cast<int>(polys_.size()) <= j) {
            const RatPoly& prev = polys_.back();
            int n = static_cast<int>(polys_.size());
            // Antiderivative of n * B_{n-1}, constant term 0.
            RatPoly next(prev.size() + 1, Rational(0));
            for (std::size_t i = 0; i < prev.size(); ++i)
                next[i + 1] = Rational(n) * prev[i] / Rational(static_cast<int>(i) + 1);
            // Fix the constant so that \int_0^1 next = 0.
            Rational integral(0);
            for (std::size_t i = 1; i < next.size(); ++i)
                integral += next[i] / Rational(static_cast<int>(i) + 1);
            next[0] = -integral;
            polys_.push_back(std::move(next));
        }
    }

    std::vector<RatPoly> polys_;
    std::mutex mutex_;
};

inline Rational bernoulli_number(int j) { return BernoulliTable::number(j); }
inline RatPoly bernoulli_poly(int j) { return BernoulliTable::poly(j); }

// ---------------------------------------------------------------------------
// CoeffTable: finite map L -> c_L with a declared total-degree bound. Entries
// may be exact (symbolic pipelines) or floating with an error estimate
// (quadrature pipelines).
// ---------------------------------------------------------------------------

struct CoeffEntry {
    double value = 0.0;
    double error = 0.0;
    std::optional<Rational> exact;

    Rational exact_value() const {
        return exact ? *exact : rational_from_double(value);  // doubles are exact rationals
    }
};

struct CoeffTable {
    int num_vars = 0;
    int degree_bound = 0;
    std::map<MultiIndex, CoeffEntry, GradedLexLess> entries;

    static CoeffTable from_polynomial(const MultiPoly& P, int degree_bound) {
        CoeffTable t;
        t.num_vars = P.num_vars();
        t.degree_bound = degree_bound;
        for (const auto& [L, c] : P.terms())
            t.entries[L] = CoeffEntry{to_double(c), 0.0, c};
        return t;
    }

    MultiPoly to_polynomial() const {
        MultiPoly P(num_vars);
        for (const auto& [L, e] : entries) P.add_term(L, e.exact_value());
        return P;
    }

    void set(MultiIndex L, double value, double error) {
        entries[std::move(L)] = CoeffEntry{value, error, std::nullopt};
    }

    double eval(const std::vector<double>& a) const {
        double sum = 0.0;
        for (const auto& [L, e] : entries) {
            double term = e.value;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (int k = 0; k < L[i]; ++k) term *= a[i];
            sum += term;
        }
        return sum;
    }
};

// ---------------------------------------------------------------------------
// Raabe transform and its inverse on polynomial spaces.
// ---------------------------------------------------------------------------

namespace detail {

// Multiply f by a univariate polynomial u(x_var), exactly.
inline MultiPoly mul_univariate(const MultiPoly& f, const RatPoly& u, int var) {
    MultiPoly r(f.num_vars());
    for (const auto& [L, c] : f.terms())
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u[k] == 0) continue;
            MultiIndex M = L;
            M[var] += static_cast<int>(k);
            r.add_term(std::move(M), c * u[k]);
        }
    return r;
}

// \int_0^1 (x + t)^e dt = ((x+1)^{e+1} - x^{e+1}) / (e+1) as a polynomial in x.
inline RatPoly raabe_monomial_factor(int e) {
    RatPoly out(e + 1, Rational(0));
    for (int k = 0; k <= e; ++k)
        out[k] = Rational(binomial_integer(e + 1, k)) / Rational(e + 1);
    return out;
}

}  // namespace detail

// P(a) = \int_{[0,1]^p} Q(a+t) dt, exactly. Linear and degree-preserving.
inline MultiPoly raabe_transform(const MultiPoly& Q) {
    const int p = Q.num_vars();
    MultiPoly P(p);
    for (const auto& [L, c] : Q.terms()) {
        MultiPoly term = MultiPoly::constant(p, c);
        for (int i = 0; i < p; ++i)
            if (L[i] > 0) term = detail::mul_univariate(term, detail::raabe_monomial_factor(L[i]), i);
        P = P + term;
    }
    return P;
}

// Q(a) = sum_L d_L prod_i B_{L_i}(a_i): substitutes the Bernoulli basis for the
// monomial basis, inverting the Raabe transform.
inline MultiPoly inverse_raabe(const MultiPoly& P) {
    const int p = P.num_vars();
    MultiPoly Q(p);
    for (const auto& [L, c] : P.terms()) {
        MultiPoly term = MultiPoly::constant(p, c);
        for (int i = 0; i < p; ++i)
            if (L[i] > 0) term = detail::mul_univariate(term, bernoulli_poly(L[i]), i);
        Q = Q + term;
    }
    return Q;
}

inline MultiPoly inverse_raabe(const CoeffTable& P) { return inverse_raabe(P.to_polynomial()); }

struct Substitution {
    double value = 0.0;
    double error = 0.0;
};

// sum_L c_L prod_i B_{L_i}; equals inverse_raabe(C) evaluated at a = 0.
// Per-coefficient errors propagate linearly.
inline Substitution bernoulli_substitute(const CoeffTable& C) {
    Substitution out;
    for (const auto& [L, e] : C.entries) {
        double basis = 1.0;
        for (int Li : L) basis *= to_double(bernoulli_number(Li));
        out.value += e.value * basis;
        out.error += e.error * std::abs(basis);
    }
    return out;
}

// sum_L c_L prod_i B_{L_i}(a_i) at a rational point a (Bernoulli polynomials
// evaluated exactly, coefficients floating).
inline Substitution bernoulli_basis_eval(const CoeffTable& C, const std::vector<Rational>& a) {
    if (static_cast<int>(a.size()) != C.num_vars)
        throw DimensionMismatch("evaluation point has wrong dimension");
    Substitution out;
    for (const auto& [L, e] : C.entries) {
        double basis = 1.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            basis *= to_double(eval_poly(bernoulli_poly(L[i]), a[i]));
        out.value += e.value * basis;
        out.error += e.error * std::abs(basis);
    }
    return out;
}

}  // namespace zetaspec
