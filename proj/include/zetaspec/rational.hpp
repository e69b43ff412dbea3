#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace zetaspec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Exact: every finite double is a binary rational.
inline Rational rational_from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline Rational rational_pow(const Rational& base, int e) {
    if (e < 0) {
        Rational inv = Rational(1) / base;  // throws on zero via boost
        return rational_pow(inv, -e);
    }
    Rational acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Integer binomial_integer(int n, int k) {
    if (k < 0 || k > n) return Integer(0);
    k = std::min(k, n - k);
    Integer acc(1);
    for (int j = 1; j <= k; ++j) {
        acc *= (n - k + j);
        acc /= j;
    }
    return acc;
}

inline double binomial_double(int n, int k) {
    return binomial_integer(n, k).template convert_to<double>();
}

// Best rational approximation with denominator <= max_den (continued fractions),
// or nullopt when no candidate lands within atol of v.
inline std::optional<Rational> nearest_rational(double v, long max_den, double atol) {
    if (!std::isfinite(v)) return std::nullopt;
    double x = v;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(x);
        if (fl > 9e17 || fl < -9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (q1 < 1) return std::nullopt;
    Rational cand{Integer(p1), Integer(q1)};
    if (std::abs(to_double(cand) - v) <= atol) return cand;
    return std::nullopt;
}

}  // namespace zetaspec
