// Demonstrates the degree-weighted product rule at s = 0,
//   deg(f h) zeta(0; f h, g) = deg(f) zeta(0; f, g) + deg(h) zeta(0; h, g),
// on a mixed-degree family, along with the same rule for zeta integrals.

#include <cstdio>

#include "zetaspec/zetaspec.hpp"

using namespace zetaspec;

int main() {
    QuadratureRule rule = QuadratureRule::gauss_legendre(32);
    MultiPoly g = parse_poly("1", 2);
    MultiPoly f1 = parse_poly("x1+x2+1", 2);
    MultiPoly f2 = parse_poly("x1^2+x2^2+1", 2);
    MultiPoly prod = f1 * f2;

    double z1 = zeta_special(f1, g, 0, rule).value.real();
    double z2 = zeta_special(f2, g, 0, rule).value.real();
    double zp = zeta_special(prod, g, 0, rule).value.real();

    std::printf("zeta(0; f1, g)    = %.12g   (deg %d)\n", z1, f1.degree());
    std::printf("zeta(0; f2, g)    = %.12g   (deg %d)\n", z2, f2.degree());
    std::printf("zeta(0; f1 f2, g) = %.12g   (deg %d)\n", zp, prod.degree());
    std::printf("lhs = deg(f1 f2) * zeta(0; f1 f2) = %.12g\n", prod.degree() * zp);
    std::printf("rhs = sum deg(fj) * zeta(0; fj)   = %.12g\n",
                f1.degree() * z1 + f2.degree() * z2);

    ProductRuleReport zrep = product_rule_Z({f1, f2}, g, rule);
    std::printf("integral rule: lhs %.12g rhs %.12g (discrepancy %.3g, consistent: %s)\n",
                zrep.lhs, zrep.rhs, zrep.discrepancy, zrep.consistent ? "yes" : "no");
    return 0;
}
