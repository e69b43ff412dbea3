#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace zetaspec;

TEST_CASE("Bernoulli numbers from the defining recurrence") {
    REQUIRE(bernoulli_number(0) == Rational(1));
    REQUIRE(bernoulli_number(1) == Rational(-1, 2));
    REQUIRE(bernoulli_number(2) == Rational(1, 6));
    REQUIRE(bernoulli_number(3) == Rational(0));
    REQUIRE(bernoulli_number(4) == Rational(-1, 30));
    REQUIRE(bernoulli_number(12) == Rational(-691, 2730));
}

TEST_CASE("Bernoulli polynomials: values and defining identities") {
    REQUIRE(bernoulli_poly(0) == RatPoly{Rational(1)});
    REQUIRE(bernoulli_poly(1) == RatPoly{Rational(-1, 2), Rational(1)});
    REQUIRE(bernoulli_poly(2) == RatPoly{Rational(1, 6), Rational(-1), Rational(1)});

    for (int j = 1; j <= 12; ++j) {
        RatPoly Bj = bernoulli_poly(j), Bprev = bernoulli_poly(j - 1);
        // d/dt B_j = j B_{j-1}
        for (std::size_t i = 1; i < Bj.size(); ++i)
            REQUIRE(Bj[i] * Rational(static_cast<int>(i)) == Rational(j) * Bprev[i - 1]);
        // int_0^1 B_j = 0
        Rational integral(0);
        for (std::size_t i = 0; i < Bj.size(); ++i)
            integral += Bj[i] / Rational(static_cast<int>(i) + 1);
        REQUIRE(integral == 0);
        // B_j(x+1) - B_j(x) = j x^{j-1}
        for (int x = 0; x <= 3; ++x) {
            Rational lhs = eval_poly(Bj, Rational(x + 1)) - eval_poly(Bj, Rational(x));
            REQUIRE(lhs == Rational(j) * rational_pow(Rational(x), j - 1));
        }
    }
}

TEST_CASE("raabe_transform on the worked examples") {
    // R(B_2(a)) = a^2
    MultiPoly B2(1);
    RatPoly b2 = bernoulli_poly(2);
    for (std::size_t i = 0; i < b2.size(); ++i)
        B2.add_term({static_cast<int>(i)}, b2[i]);
    REQUIRE(raabe_transform(B2) == parse_poly("x1^2", 1));

    REQUIRE(raabe_transform(parse_poly("1", 2)) == parse_poly("1", 2));
    REQUIRE(raabe_transform(parse_poly("x1", 1)) == parse_poly("x1 + 1/2", 1));
}

TEST_CASE("raabe_transform maps the Bernoulli basis to monomials, |L| <= 6, p <= 3") {
    for (int p = 1; p <= 3; ++p) {
        std::vector<MultiIndex> all;
        MultiIndex L(p, 0);
        std::function<void(int, int)> gen = [&](int i, int left) {
            if (i == p) {
                all.push_back(L);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                L[i] = e;
                gen(i + 1, left - e);
            }
        };
        gen(0, 6);
        for (const auto& idx : all) {
            MultiPoly prod = MultiPoly::constant(p, Rational(1));
            for (int i = 0; i < p; ++i) {
                MultiPoly Bi(p);
                RatPoly b = bernoulli_poly(idx[i]);
                for (std::size_t k = 0; k < b.size(); ++k) {
                    MultiIndex e(p, 0);
                    e[i] = static_cast<int>(k);
                    Bi.add_term(std::move(e), b[k]);
                }
                prod = prod * Bi;
            }
            REQUIRE(raabe_transform(prod) == MultiPoly::monomial(p, idx, Rational(1)));
        }
    }
}

TEST_CASE("raabe_transform is linear and degree-preserving") {
    std::mt19937 rng(53);
    for (int i = 0; i < 15; ++i) {
        int p = 1 + i % 3;
        MultiPoly f = testutil::random_poly(rng, p, 4);
        MultiPoly g = testutil::random_poly(rng, p, 4);
        Rational alpha(3, 7);
        REQUIRE(raabe_transform(f * alpha + g) ==
                raabe_transform(f) * alpha + raabe_transform(g));
        if (!f.is_zero()) REQUIRE(raabe_transform(f).degree() == f.degree());
    }
}

TEST_CASE("inverse_raabe inverts raabe_transform exactly") {
    REQUIRE(inverse_raabe(parse_poly("x1^2", 1)) ==
            parse_poly("x1^2 - x1 + 1/6", 1));  // B_2
    // P = -1 - a: Q(a) = -a - 1/2, and Q(0) = -1/2
    MultiPoly Q = inverse_raabe(parse_poly("-1 - x1", 1));
    REQUIRE(Q == parse_poly("-x1 - 1/2", 1));
    REQUIRE(Q.eval(std::vector<Rational>{Rational(0)}) == Rational(-1, 2));
    REQUIRE(inverse_raabe(parse_poly("7/3", 2)) == parse_poly("7/3", 2));

    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        int p = 1 + i % 3;
        MultiPoly f = testutil::random_poly(rng, p, 5);
        REQUIRE(inverse_raabe(raabe_transform(f)) == f);
        REQUIRE(raabe_transform(inverse_raabe(f)) == f);
    }
}

TEST_CASE("bernoulli_substitute on the Riemann tables") {
    CoeffTable c0;
    c0.num_vars = 1;
    c0.degree_bound = 1;
    c0.set({0}, -1.0, 0.0);
    c0.set({1}, -1.0, 0.0);
    REQUIRE_THAT(bernoulli_substitute(c0).value, Catch::Matchers::WithinAbs(-0.5, 1e-15));

    CoeffTable c1;
    c1.num_vars = 1;
    c1.degree_bound = 2;
    c1.set({0}, -0.5, 0.0);
    c1.set({1}, -1.0, 0.0);
    c1.set({2}, -0.5, 0.0);
    REQUIRE_THAT(bernoulli_substitute(c1).value,
                 Catch::Matchers::WithinAbs(-1.0 / 12.0, 1e-15));

    CoeffTable cc;
    cc.num_vars = 3;
    cc.degree_bound = 0;
    cc.set({0, 0, 0}, 0.75, 0.0);
    REQUIRE(bernoulli_substitute(cc).value == 0.75);

    // Error propagation is linear in per-coefficient error.
    CoeffTable ce;
    ce.num_vars = 1;
    ce.degree_bound = 1;
    ce.set({0}, 1.0, 1e-4);
    ce.set({1}, 1.0, 1e-4);
    REQUIRE_THAT(bernoulli_substitute(ce).error, Catch::Matchers::WithinRel(1.5e-4, 1e-12));
}

TEST_CASE("bernoulli_substitute equals inverse_raabe at 0") {
    std::mt19937 rng(29);
    for (int i = 0; i < 10; ++i) {
        int p = 1 + i % 2;
        MultiPoly f = testutil::random_poly(rng, p, 4);
        CoeffTable t = CoeffTable::from_polynomial(f, 6);
        double viaSub = bernoulli_substitute(t).value;
        double viaQ = to_double(inverse_raabe(t).eval(std::vector<Rational>(p, Rational(0))));
        REQUIRE_THAT(viaSub, Catch::Matchers::WithinAbs(viaQ, 1e-11));
    }
}
