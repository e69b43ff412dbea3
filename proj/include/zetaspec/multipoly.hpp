#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zetaspec/errors.hpp"
#include "zetaspec/rational.hpp"

namespace zetaspec {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& L) {
    return std::accumulate(L.begin(), L.end(), 0);
}

// Canonical term order: graded lexicographic (degree first, then lex on
// exponent vectors). Used for deterministic printing and map layout.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Flattened double-precision copy of a polynomial for hot evaluation loops.
struct CompiledPoly {
    int num_vars = 0;
    std::vector<double> coef;
    std::vector<int> exps;  // coef.size() * num_vars, row-major

    double eval(const double* x) const {
        double sum = 0.0;
        const int* e = exps.data();
        for (std::size_t t = 0; t < coef.size(); ++t, e += num_vars) {
            double term = coef[t];
            for (int j = 0; j < num_vars; ++j)
                for (int k = 0; k < e[j]; ++k) term *= x[j];
            sum += term;
        }
        return sum;
    }
    bool empty() const { return coef.empty(); }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Immutable in spirit: all operations return new values, so instances can be
// shared freely across threads.
class MultiPoly {
public:
    using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

    static constexpr int kDegreeMinusInfinity = std::numeric_limits<int>::min();

    explicit MultiPoly(int num_vars) : p_(num_vars) {
        if (num_vars < 1) throw DimensionMismatch("num_vars must be positive");
    }

    static MultiPoly constant(int num_vars, const Rational& c) {
        MultiPoly f(num_vars);
        f.add_term(MultiIndex(num_vars, 0), c);
        return f;
    }
    // var is 0-based.
    static MultiPoly variable(int num_vars, int var) {
        if (var < 0 || var >= num_vars) throw VarOutOfRange("variable index out of range");
        MultiIndex L(num_vars, 0);
        L[var] = 1;
        MultiPoly f(num_vars);
        f.add_term(std::move(L), Rational(1));
        return f;
    }
    static MultiPoly monomial(int num_vars, MultiIndex L, const Rational& c) {
        if (static_cast<int>(L.size()) != num_vars)
            throw DimensionMismatch("exponent vector length != num_vars");
        MultiPoly f(num_vars);
        f.add_term(std::move(L), c);
        return f;
    }

    int num_vars() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    int degree() const {
        if (terms_.empty()) return kDegreeMinusInfinity;
        return total_degree(terms_.rbegin()->first);  // graded order: last term is top
    }

    Rational coefficient(const MultiIndex& L) const {
        auto it = terms_.find(L);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(MultiIndex(p_, 0)); }

    void add_term(MultiIndex L, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(L), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(p_);
        for (const auto& [L, c] : terms_) r.terms_.emplace(L, -c);
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        check_same_vars(o);
        MultiPoly r = *this;
        for (const auto& [L, c] : o.terms_) r.add_term(L, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_same_vars(o);
        MultiPoly r = *this;
        for (const auto& [L, c] : o.terms_) r.add_term(L, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check_same_vars(o);
        MultiPoly r(p_);
        for (const auto& [La, ca] : terms_)
            for (const auto& [Lb, cb] : o.terms_) {
                MultiIndex L(p_);
                for (int i = 0; i < p_; ++i) L[i] = La[i] + Lb[i];
                r.add_term(std::move(L), ca * cb);
            }
        return r;
    }
    MultiPoly operator*(const Rational& c) const {
        MultiPoly r(p_);
        if (c == 0) return r;
        for (const auto& [L, v] : terms_) r.terms_.emplace(L, v * c);
        return r;
    }
    MultiPoly pow(int e) const {
        if (e < 0) throw NegativeExponent("polynomial power must be non-negative");
        MultiPoly acc = constant(p_, Rational(1));
        MultiPoly b = *this;
        while (e > 0) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }
    bool operator==(const MultiPoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }

    // Exact on rational points; T may be Rational, double, std::complex<double>.
    template <class T>
    T eval(const std::vector<T>& x) const {
        if (static_cast<int>(x.size()) != p_)
            throw DimensionMismatch("evaluation point has wrong dimension");
        T sum{};
        for (const auto& [L, c] : terms_) {
            T term = coefficient_as<T>(c);
            for (int i = 0; i < p_; ++i)
                for (int k = 0; k < L[i]; ++k) term *= x[i];
            sum += term;
        }
        return sum;
    }

    // f_a(x) = f(x + a); exact, degree-preserving, (f_a)_top = f_top.
    MultiPoly shift(const std::vector<Rational>& a) const {
        if (static_cast<int>(a.size()) != p_)
            throw DimensionMismatch("shift vector has wrong dimension");
        MultiPoly r = *this;
        for (int i = 0; i < p_; ++i)
            if (a[i] != 0) r = r.shift_one(i, a[i]);
        return r;
    }

    // Sum of the terms of total degree exactly j.
    MultiPoly homogeneous_part(int j) const {
        MultiPoly r(p_);
        for (const auto& [L, c] : terms_)
            if (total_degree(L) == j) r.terms_.emplace(L, c);
        return r;
    }
    MultiPoly top_part() const {
        if (is_zero()) return MultiPoly(p_);
        return homogeneous_part(degree());
    }

    // perm[i] = new position of variable i (a permutation of 0..p-1).
    MultiPoly permute_variables(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != p_)
            throw DimensionMismatch("permutation has wrong length");
        MultiPoly r(p_);
        for (const auto& [L, c] : terms_) {
            MultiIndex M(p_, 0);
            for (int i = 0; i < p_; ++i) M[perm[i]] = L[i];
            r.add_term(std::move(M), c);
        }
        return r;
    }

    CompiledPoly compile() const {
        CompiledPoly cp;
        cp.num_vars = p_;
        cp.coef.reserve(terms_.size());
        cp.exps.reserve(terms_.size() * p_);
        for (const auto& [L, c] : terms_) {
            cp.coef.push_back(to_double(c));
            cp.exps.insert(cp.exps.end(), L.begin(), L.end());
        }
        return cp;
    }

    std::string to_string() const;

private:
    void check_same_vars(const MultiPoly& o) const {
        if (p_ != o.p_) throw DimensionMismatch("polynomials have different variable counts");
    }

    template <class T>
    static T coefficient_as(const Rational& c) {
        if constexpr (std::is_same_v<T, Rational>) return c;
        else return T(to_double(c));
    }

    MultiPoly shift_one(int var, const Rational& a) const {
        MultiPoly r(p_);
        std::vector<Rational> apow{Rational(1)};
        for (const auto& [L, c] : terms_) {
            int e = L[var];
            while (static_cast<int>(apow.size()) <= e) apow.push_back(apow.back() * a);
            for (int j = 0; j <= e; ++j) {
                MultiIndex M = L;
                M[var] = j;
                r.add_term(std::move(M), c * Rational(binomial_integer(e, j)) * apow[e - j]);
            }
        }
        return r;
    }

    int p_;
    TermMap terms_;
};

inline MultiPoly homogeneous_part(const MultiPoly& f, int j) { return f.homogeneous_part(j); }
inline MultiPoly shift(const MultiPoly& f, const std::vector<Rational>& a) { return f.shift(a); }

// ---------------------------------------------------------------------------
// Expression parser.
//
// Grammar (whitespace insignificant):
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' exponent]
//   primary := literal | variable | '(' expr ')'
//   literal := integer ['/' integer]        (a rational literal, not division)
//   exponent:= integer | '(' ['-'] literal ')'
// Variables: x1..x9, with aliases x,y,z for x1,x2,x3.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, int num_vars) : s_(text), p_(num_vars) {
        if (num_vars < 1 || num_vars > 9)
            throw DimensionMismatch("num_vars must be between 1 and 9");
    }

    MultiPoly parse() {
        MultiPoly r = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError(unexpected("end of expression"));
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string unexpected(const std::string& wanted) {
        std::ostringstream os;
        os << "expected " << wanted << " at position " << pos_;
        if (pos_ < s_.size()) os << " (found '" << s_[pos_] << "')";
        return os.str();
    }

    MultiPoly parse_expr() {
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        } else if (peek() == '+') {
            ++pos_;
        }
        MultiPoly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly parse_term() {
        MultiPoly acc = parse_factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * parse_factor();
        }
        return acc;
    }

    MultiPoly parse_factor() {
        MultiPoly base = parse_primary();
        if (peek() == '^') {
            ++pos_;
            return base.pow(parse_exponent());
        }
        return base;
    }

    MultiPoly parse_primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            MultiPoly inner = parse_expr();
            if (!consume(')')) throw SyntaxError(unexpected("')'"));
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(p_, parse_literal());
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_variable();
        throw SyntaxError(unexpected("a literal, variable or '('"));
    }

    Integer parse_integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw SyntaxError(unexpected("an integer"));
        Integer v(0);
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    Rational parse_literal() {
        Integer num = parse_integer();
        if (peek() == '/') {
            ++pos_;
            Integer den = parse_integer();
            if (den == 0) throw SyntaxError("zero denominator in rational literal");
            return Rational(num, den);
        }
        return Rational(num);
    }

    MultiPoly parse_variable() {
        skip_ws();
        char c = s_[pos_++];
        int idx = -1;
        if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            idx = s_[pos_++] - '0';
            if (idx == 0) throw SyntaxError("variables are x1..x9");
        } else if (c == 'x') {
            idx = 1;
        } else if (c == 'y') {
            idx = 2;
        } else if (c == 'z') {
            idx = 3;
        } else {
            --pos_;
            throw SyntaxError(unexpected("a variable (x1..x9, x, y, z)"));
        }
        if (idx > p_) {
            std::ostringstream os;
            os << "variable x" << idx << " exceeds num_vars = " << p_;
            throw VarOutOfRange(os.str());
        }
        return MultiPoly::variable(p_, idx - 1);
    }

    int parse_exponent() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            bool neg = consume('-');
            Rational lit = parse_literal();
            if (!consume(')')) throw SyntaxError(unexpected("')' in exponent"));
            if (neg || denominator(lit) != 1)
                throw NegativeExponent("exponent must be a non-negative integer literal");
            return checked_exponent(numerator(lit));
        }
        if (c == '-') throw NegativeExponent("exponent must be a non-negative integer literal");
        Rational lit = parse_literal();
        if (denominator(lit) != 1)
            throw NegativeExponent("exponent must be a non-negative integer literal");
        return checked_exponent(numerator(lit));
    }

    static int checked_exponent(const Integer& v) {
        if (v > 64) throw SyntaxError("exponent too large (limit 64)");
        return v.template convert_to<int>();
    }

    const std::string& s_;
    int p_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text, int num_vars) {
    return detail::PolyParser(text, num_vars).parse();
}

// Canonical printer: descending graded-lex term order; round-trips through
// parse_poly.
inline std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [L, c] = *it;
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        bool has_vars = total_degree(L) > 0;
        if (!has_vars || mag != 1) {
            os << mag;
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < p_; ++i) {
            if (L[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "x" << (i + 1);
            if (L[i] > 1) os << "^" << L[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Mahler's Hypothesis check.
// ---------------------------------------------------------------------------

enum class MahlerVerdict { Proven, Likely, Violated };

inline const char* to_string(MahlerVerdict v) {
    switch (v) {
        case MahlerVerdict::Proven: return "PROVEN";
        case MahlerVerdict::Likely: return "LIKELY";
        case MahlerVerdict::Violated: return "VIOLATED";
    }
    return "?";
}

struct MahlerReport {
    MahlerVerdict verdict = MahlerVerdict::Likely;
    std::optional<std::vector<Rational>> witness;  // point where f<=0 or f_top<=0
    Rational min_abs_f{0};                         // smallest |f| on the octant sample grid
    Rational min_abs_ftop{0};                      // smallest |f_top| on the face sample grid
    bool proven_by_coefficients = false;
};

namespace detail {

// Tensor grid enumeration over a fixed axis value set.
inline void for_each_grid_point(const std::vector<Rational>& axis, int dims,
                                const std::function<bool(const std::vector<Rational>&)>& visit) {
    std::vector<std::size_t> idx(dims, 0);
    std::vector<Rational> pt(dims);
    for (;;) {
        for (int i = 0; i < dims; ++i) pt[i] = axis[idx[i]];
        if (!visit(pt)) return;
        int axis_i = 0;
        while (axis_i < dims) {
            if (++idx[axis_i] < axis.size()) break;
            idx[axis_i++] = 0;
        }
        if (axis_i == dims) return;
    }
}

}  // namespace detail

// Three-tier check: PROVEN by the sufficient coefficient condition (all
// coefficients non-negative, constant term positive, f_top containing every
// pure power x_i^m with positive coefficient); VIOLATED when sampling finds a
// non-positive value of f on the octant grid or of f_top on the face grid;
// LIKELY otherwise.
inline MahlerReport check_mahler(const MultiPoly& f, int grid_density = 8) {
    if (grid_density < 2) grid_density = 2;
    const int p = f.num_vars();
    const int m = f.degree();
    if (m <= 0) throw ConstantPolynomial("Mahler's Hypothesis requires a non-constant polynomial");

    MahlerReport rep;
    MultiPoly ftop = f.top_part();

    // Sufficient condition.
    bool all_nonneg = true;
    for (const auto& [L, c] : f.terms())
        if (c < 0) all_nonneg = false;
    bool const_pos = f.constant_term() > 0;
    bool pure_powers = true;
    for (int i = 0; i < p; ++i) {
        MultiIndex L(p, 0);
        L[i] = m;
        if (ftop.coefficient(L) <= 0) pure_powers = false;
    }

    // Sample f on the octant: the unit cube grid plus the integer grid.
    std::vector<Rational> axis;
    for (int i = 0; i <= grid_density; ++i) axis.emplace_back(Rational(i, grid_density));
    for (int i = 2; i <= grid_density; ++i) axis.emplace_back(Rational(i));
    bool have_min_f = false;
    detail::for_each_grid_point(axis, p, [&](const std::vector<Rational>& pt) {
        Rational v = f.eval(pt);
        if (v <= 0 && !rep.witness) {
            rep.verdict = MahlerVerdict::Violated;
            rep.witness = pt;
        }
        Rational a = v < 0 ? Rational(-v) : v;
        if (!have_min_f || a < rep.min_abs_f) {
            rep.min_abs_f = a;
            have_min_f = true;
        }
        return true;
    });

    // Sample f_top on the face domain (max-norm = 1): per face, the remaining
    // coordinates range over the unit cube grid.
    std::vector<Rational> face_axis;
    for (int i = 0; i <= grid_density; ++i) face_axis.emplace_back(Rational(i, grid_density));
    bool have_min_top = false;
    for (int face = 0; face < p; ++face) {
        detail::for_each_grid_point(face_axis, p - 1, [&](const std::vector<Rational>& coords) {
            std::vector<Rational> pt(p);
            int k = 0;
            for (int i = 0; i < p; ++i) pt[i] = (i == face) ? Rational(1) : coords[k++];
            Rational v = ftop.eval(pt);
            if (v <= 0 && !rep.witness) {
                rep.verdict = MahlerVerdict::Violated;
                rep.witness = pt;
            }
            Rational a = v < 0 ? Rational(-v) : v;
            if (!have_min_top || a < rep.min_abs_ftop) {
                rep.min_abs_ftop = a;
                have_min_top = true;
            }
            return true;
        });
        if (p == 1) break;  // single face point
    }

    if (rep.verdict == MahlerVerdict::Violated) return rep;
    if (all_nonneg && const_pos && pure_powers) {
        rep.verdict = MahlerVerdict::Proven;
        rep.proven_by_coefficients = true;
    } else {
        rep.verdict = MahlerVerdict::Likely;
    }
    return rep;
}

}  // namespace zetaspec
