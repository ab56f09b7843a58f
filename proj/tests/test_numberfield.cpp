#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "piltz/numberfield.hpp"
#include "piltz/poly.hpp"

using namespace piltz;
using namespace piltz::nf;

TEST_CASE("parse_field: x^2+1 (Gaussian field)") {
    auto spec = parse_field({1, 0, 1}, std::nullopt, "Q(i)");
    CHECK(spec.m == 2);
    CHECK(spec.r1 == 0);
    CHECK(spec.r2 == 1);
    CHECK(spec.disc_f == -4);
    CHECK(spec.D == 4);
    CHECK(spec.index_sq_divisors.empty());
}

TEST_CASE("parse_field: x-1 (rationals)") {
    auto spec = parse_field({-1, 1});
    CHECK(spec.m == 1);
    CHECK(spec.r1 == 1);
    CHECK(spec.r2 == 0);
    CHECK(spec.D == 1);
}

TEST_CASE("parse_field: x^3-x-1 (discriminant -23, signature (1,1))") {
    auto spec = parse_field({-1, -1, 0, 1});
    CHECK(spec.m == 3);
    CHECK(spec.r1 == 1);
    CHECK(spec.r2 == 1);
    CHECK(spec.disc_f == -23);
    CHECK(spec.D == 23);
}

TEST_CASE("parse_field: quintic x^5+20x+16 (A5 field, index divisor at 2)") {
    // disc(x^5+ax+b) = 5^5 b^4 + 4^4 a^5 = 3125*65536 + 256*3200000 = 32000^2
    i64 expected_disc = 3125LL * 65536 + 256LL * 3200000;
    CHECK(expected_disc == 32000LL * 32000);  // square, as A5 requires
    // Z[xi] is not 2-maximal; the field discriminant is 10^6 (index 32)
    CHECK_THROWS_AS(parse_field({16, 20, 0, 0, 0, 1}), UnknownDiscriminant);
    auto spec = parse_field({16, 20, 0, 0, 0, 1}, 1000000, "quintic");
    CHECK(spec.disc_f == expected_disc);
    CHECK(spec.D == 1000000);
    CHECK(spec.m == 5);
    CHECK(spec.r1 == 1);
    CHECK(spec.r2 == 2);
    REQUIRE(spec.index_sq_divisors.size() == 1);
    CHECK(spec.index_sq_divisors[0] == 2);
}

TEST_CASE("parse_field rejects reducible inputs") {
    CHECK_THROWS_AS(parse_field({1, 2, 1}), ReduciblePolynomial);  // (x+1)^2
    // (x^2+1)(x^2+2) = x^4 + 3x^2 + 2: no rational root, needs the factor search
    CHECK_THROWS_AS(parse_field({2, 0, 3, 0, 1}), ReduciblePolynomial);
}

TEST_CASE("parse_field: UnknownDiscriminant and D override (x^2+3)") {
    // Z[sqrt(-3)] is not 2-maximal; ring of integers is Z[(1+sqrt(-3))/2], D=3
    CHECK_THROWS_AS(parse_field({3, 0, 1}), UnknownDiscriminant);
    auto spec = parse_field({3, 0, 1}, 3, "Q(sqrt(-3))");
    CHECK(spec.D == 3);
    CHECK(spec.disc_f == -12);
    REQUIRE(spec.index_sq_divisors.size() == 1);
    CHECK(spec.index_sq_divisors[0] == 2);
}

TEST_CASE("factor_mod_p examples for x^2+1") {
    SUBCASE("p=5 splits") {
        auto f = factor_mod_p({1, 0, 1}, 5);
        REQUIRE(f.size() == 2);
        CHECK(f[0].first == std::vector<i64>{2, 1});  // x+2
        CHECK(f[0].second == 1);
        CHECK(f[1].first == std::vector<i64>{3, 1});  // x+3
        CHECK(f[1].second == 1);
    }
    SUBCASE("p=2 ramifies") {
        auto f = factor_mod_p({1, 0, 1}, 2);
        REQUIRE(f.size() == 1);
        CHECK(f[0].first == std::vector<i64>{1, 1});  // x+1
        CHECK(f[0].second == 2);
    }
    SUBCASE("p=3 inert") {
        auto f = factor_mod_p({1, 0, 1}, 3);
        REQUIRE(f.size() == 1);
        CHECK(f[0].first == std::vector<i64>{1, 0, 1});
        CHECK(f[0].second == 1);
    }
}

TEST_CASE("factor_mod_p round-trip on random inputs") {
    std::mt19937_64 rng(0x9E3779B97F4A7C15ULL);
    auto primes = primes_up_to(9999);
    std::uniform_int_distribution<size_t> pick_p(0, primes.size() - 1);
    std::uniform_int_distribution<int> pick_deg(1, 8);
    std::uniform_int_distribution<i64> pick_c(-50, 50);

    for (int trial = 0; trial < 1000; ++trial) {
        i64 p = primes[pick_p(rng)];
        int deg = pick_deg(rng);
        std::vector<i64> f(deg + 1);
        for (int i = 0; i < deg; ++i) f[i] = pick_c(rng);
        f[deg] = 1;  // keep the reduction monic and degree stable
        auto factors = factor_mod_p(f, p);

        fp::Poly prod = {1};
        for (auto& [g, e] : factors)
            for (int i = 0; i < e; ++i) prod = fp::mul(prod, g, p);
        fp::Poly expect = fp::reduce(f, p);
        CAPTURE(p);
        CAPTURE(f);
        REQUIRE(prod == expect);
        // deterministic ordering: degree, then lexicographic coefficients
        for (size_t i = 1; i < factors.size(); ++i) {
            auto& a = factors[i - 1].first;
            auto& b = factors[i].first;
            bool ordered = a.size() < b.size() || (a.size() == b.size() && a <= b);
            CHECK(ordered);
        }
    }
}

TEST_CASE("splitting_type examples") {
    auto qi = field_gaussian();
    SUBCASE("Q(i), p=5: two degree-1 primes") {
        auto st = splitting_type(qi, 5);
        CHECK(st.nu == 2);
        CHECK(!st.ramified);
        REQUIRE(st.factors.size() == 2);
        CHECK(st.factors[0] == std::pair<int, int>{1, 1});
        CHECK(st.factors[1] == std::pair<int, int>{1, 1});
    }
    SUBCASE("Q(i), p=2: ramified") {
        auto st = splitting_type(qi, 2);
        CHECK(st.nu == 0);
        CHECK(st.ramified);
        REQUIRE(st.factors.size() == 1);
        CHECK(st.factors[0] == std::pair<int, int>{1, 2});
    }
    SUBCASE("Q: every prime has nu=1") {
        auto q = field_rationals();
        for (i64 p : {2, 3, 5, 97, 65537}) {
            auto st = splitting_type(q, p);
            CHECK(st.nu == 1);
            CHECK(!st.ramified);
            REQUIRE(st.factors.size() == 1);
            CHECK(st.factors[0] == std::pair<int, int>{1, 1});
        }
    }
}

TEST_CASE("splitting invariants: sum e_i f_i = m; ramified iff p | D") {
    for (auto spec : {field_gaussian(), field_cubic23()}) {
        for (i64 p : primes_up_to(500)) {
            auto st = splitting_type(spec, p);
            int total = 0;
            for (auto& [fi, ei] : st.factors) total += fi * ei;
            CHECK(total == spec.m);
            CHECK(st.ramified == (spec.D % p == 0));
            if (!st.ramified)
                for (auto& [fi, ei] : st.factors) {
                    (void)fi;
                    CHECK(ei == 1);
                }
        }
    }
}

TEST_CASE("splitting_type: index divisor handling") {
    auto spec = parse_field({3, 0, 1}, 3, "Q(sqrt(-3))");
    CHECK_THROWS_AS(splitting_type(spec, 2), IndexDivisor);
    // with a user-supplied override: 2 is inert in Q(sqrt(-3))
    spec.local_overrides[2] = {{2, 1}};
    auto st = splitting_type(spec, 2);
    CHECK(st.nu == 0);
    CHECK(!st.ramified);
}

TEST_CASE("densities_from_group: S3 on 3 points") {
    auto dv = densities_from_group({{2, 1, 3}, {2, 3, 1}});
    CHECK(dv.m == 3);
    CHECK(dv.source == DensitySource::exact_group);
    CHECK(dv.deltas_exact[0] == Rational(1, 3));
    CHECK(dv.deltas_exact[1] == Rational(1, 2));
    CHECK(dv.deltas_exact[2] == Rational(0));
    CHECK(dv.deltas_exact[3] == Rational(1, 6));
    CHECK(dv.R == 2);
}

TEST_CASE("densities_from_group: A5 on 5 points") {
    auto dv = densities_from_group({{2, 3, 4, 5, 1}, {2, 3, 1, 4, 5}});
    CHECK(dv.deltas_exact[1] == Rational(1, 4));
    CHECK(dv.deltas_exact[2] == Rational(1, 3));
    CHECK(dv.deltas_exact[5] == Rational(1, 60));
    CHECK(dv.deltas_exact[0] == Rational(2, 5));
    CHECK(dv.deltas_exact[3] == Rational(0));
    CHECK(dv.deltas_exact[4] == Rational(0));
    CHECK(dv.R == 3);
}

TEST_CASE("densities_from_group: trivial group on one point") {
    auto dv = densities_from_group({{1}});
    CHECK(dv.deltas_exact[1] == Rational(1));
    CHECK(dv.R == 1);
}

TEST_CASE("densities_from_group: exact sum rules") {
    auto check_sums = [](const DensityVector& dv) {
        Rational total(0), weighted(0);
        for (int nu = 0; nu <= dv.m; ++nu) {
            total = total + dv.deltas_exact[nu];
            weighted = weighted + Rational(nu) * dv.deltas_exact[nu];
        }
        CHECK(total == Rational(1));
        CHECK(weighted == Rational(1));
    };
    check_sums(densities_from_group({{2, 1, 3}, {2, 3, 1}}));
    check_sums(densities_from_group({{2, 3, 4, 5, 1}, {2, 3, 1, 4, 5}}));
    // D4 acting on 4 points
    check_sums(densities_from_group({{2, 3, 4, 1}, {2, 1, 4, 3}}));
}

TEST_CASE("densities_from_group rejects intransitive input") {
    CHECK_THROWS_AS(densities_from_group({{2, 1, 3}}), IntransitiveGroup);
}

TEST_CASE("estimate_densities: Q(i) converges to 1/2 split, 1/2 inert") {
    auto qi = field_gaussian();
    auto dv = estimate_densities(qi, 100000);
    CHECK(std::fabs(dv.deltas[2] - 0.5) < 0.01);
    CHECK(std::fabs(dv.deltas[0] - 0.5) < 0.01);
    CHECK(dv.deltas[1] == 0.0);
    CHECK(dv.R == 1);
}

TEST_CASE("estimate_densities: error trend is non-increasing for Q(i)") {
    auto qi = field_gaussian();
    double prev = 1.0;
    for (i64 bound : {1000LL, 10000LL, 100000LL, 1000000LL}) {
        auto dv = estimate_densities(qi, bound);
        double err = std::fabs(dv.deltas[2] - 0.5);
        CHECK(err <= prev);
        prev = err;
    }
}

TEST_CASE("estimate_densities: cubic field approaches the S3 densities") {
    auto spec = field_cubic23();
    auto dv = estimate_densities(spec, 100000);
    CHECK(std::fabs(dv.deltas[1] - 0.5) < 0.02);
    CHECK(std::fabs(dv.deltas[3] - 1.0 / 6.0) < 0.02);
    CHECK(std::fabs(dv.deltas[0] - 1.0 / 3.0) < 0.02);
    CHECK(dv.deltas[2] < 0.005);
}

TEST_CASE("estimate_densities: Q is exact") {
    auto q = field_rationals();
    auto dv = estimate_densities(q, 1000);
    CHECK(dv.deltas[1] == 1.0);
    CHECK(dv.analyzed_primes == 168);
}

TEST_CASE("estimate_densities: result independent of thread count") {
    auto spec = field_cubic23();
    set_max_threads(1);
    auto serial = estimate_densities(spec, 50000);
    set_max_threads(4);
    auto parallel = estimate_densities(spec, 50000);
    set_max_threads(1);
    CHECK(serial.deltas == parallel.deltas);
    CHECK(serial.analyzed_primes == parallel.analyzed_primes);
}

TEST_CASE("estimate_densities rejects tiny bounds") {
    CHECK_THROWS_AS(estimate_densities(field_rationals(), 99), piltz::error);
}
