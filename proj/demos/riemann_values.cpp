// Computes zeta(-N) for N = 0..5 through the zeta-integral pipeline and
// compares against the Bernoulli closed form (-1)^N B_{N+1}/(N+1).

#include <cstdio>

#include "zetaspec/zetaspec.hpp"

using namespace zetaspec;

int main() {
    MultiPoly f = parse_poly("x1+1", 1);
    MultiPoly g = parse_poly("1", 1);
    QuadratureRule rule = QuadratureRule::gauss_legendre(32);

    std::printf("%3s  %22s  %22s\n", "N", "zeta(-N) computed", "Bernoulli closed form");
    for (int N = 0; N <= 5; ++N) {
        SpecialValue v = zeta_special(f, g, N, rule);
        Rational ref = bernoulli_number(N + 1) / (N + 1);
        if (N % 2) ref = -ref;
        std::printf("%3d  %22.15g  %22.15g   (%s)\n", N, v.value.real(), to_double(ref),
                    to_string(ref).c_str());
    }
    return 0;
}
