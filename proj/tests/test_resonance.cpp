#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "piltz/resonance.hpp"

using namespace piltz;
using namespace piltz::resonance;

static nf::DensityVector densities_q() {
    return nf::densities_from_group({{1}});
}
static nf::DensityVector densities_qi() {
    return nf::densities_from_group({{2, 1}});
}
static nf::DensityVector densities_s3() {
    return nf::densities_from_group({{2, 1, 3}, {2, 3, 1}});
}

TEST_CASE("build_prime_pools classifies by splitting") {
    SUBCASE("Q: every prime lands in pool 1") {
        auto pp = build_prime_pools(nf::field_rationals(), 100);
        REQUIRE(pp.pools.count(1) == 1);
        CHECK(pp.pools.at(1).size() == 25);  // pi(100)
    }
    SUBCASE("Q(i): pool 2 holds p = 1 mod 4; ramified 2 excluded") {
        auto pp = build_prime_pools(nf::field_gaussian(), 200);
        REQUIRE(pp.pools.count(2) == 1);
        for (i64 p : pp.pools.at(2)) CHECK(p % 4 == 1);
        CHECK(pp.pools.count(1) == 0);
        // inert primes have nu=0 and are not pooled
        for (auto& [nu, pool] : pp.pools)
            for (i64 p : pool) CHECK(p != 2);
    }
}

TEST_CASE("build_resonator: single-prime window equals the primes in range") {
    // Q, k=2: interval [C1^2 a, 4a] = [100, 400]; one factor from P_1
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 100.0;
    cfg.k = 2;
    cfg.X = 10.0;
    cfg.mu = {{1, 0.66}};  // floor(0.66 * loglog 100) = 1
    auto pools = build_prime_pools(nf::field_rationals(), 500);
    auto rs = build_resonator(nf::field_rationals(), densities_q(), cfg, pools);
    std::vector<i64> expect;
    for (i64 p : primes_up_to(400))
        if (p >= 100) expect.push_back(p);
    CHECK(rs.members == expect);
    CHECK(rs.M_size == (i64)expect.size());
}

TEST_CASE("build_resonator: zero factor counts give the empty set") {
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 100.0;
    cfg.k = 2;
    cfg.X = 10.0;
    cfg.mu = {{1, 0.1}};  // floor(0.1 * 1.527) = 0
    auto pools = build_prime_pools(nf::field_rationals(), 500);
    auto rs = build_resonator(nf::field_rationals(), densities_q(), cfg, pools);
    CHECK(rs.members.empty());
    CHECK(rs.M_size == 0);
}

TEST_CASE("build_resonator: Q(i) split primes in [50, 200]") {
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 50.0;
    cfg.k = 1;
    cfg.X = 10.0;
    cfg.mu = {{2, 0.8}};  // floor(0.8 * loglog 50) = 1
    auto pools = build_prime_pools(nf::field_gaussian(), 300);
    auto rs = build_resonator(nf::field_gaussian(), densities_qi(), cfg, pools);
    std::vector<i64> expect;
    for (i64 p : primes_up_to(200))
        if (p >= 50 && p % 4 == 1) expect.push_back(p);
    CHECK(rs.members == expect);
}

TEST_CASE("build_resonator: semiprime window vs brute force") {
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 100.0;
    cfg.k = 2;
    cfg.X = 10.0;
    cfg.mu = {{1, 1.4}};  // floor(1.4 * 1.527) = 2 primes
    auto pools = build_prime_pools(nf::field_rationals(), 500);
    auto rs = build_resonator(nf::field_rationals(), densities_q(), cfg, pools);
    std::set<i64> expect;
    auto ps = primes_up_to(400);
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            i64 n = ps[i] * ps[j];
            if (n >= 100 && n <= 400) expect.insert(n);
        }
    CHECK(std::set<i64>(rs.members.begin(), rs.members.end()) == expect);
    CHECK(rs.members.size() == expect.size());
}

TEST_CASE("resonator membership re-check (independent verification)") {
    ResonatorConfig cfg;
    cfg.C1 = 0.8;
    cfg.alpha = 200.0;
    cfg.k = 1;
    cfg.X = 10.0;
    auto dv = densities_s3();
    cfg.mu = {{1, 0.7}, {3, 0.7}};  // one prime from P_1 and one from P_3
    auto spec = nf::field_cubic23();
    auto pools = build_prime_pools(spec, 2000);
    auto rs = build_resonator(spec, dv, cfg, pools);
    REQUIRE(rs.M_size > 0);
    double mk = (double)spec.m * cfg.k;
    double lo = std::pow(cfg.C1, mk) * cfg.alpha, hi = std::pow(2.0, mk) * cfg.alpha;
    for (size_t i = 0; i < rs.members.size(); ++i) {
        i64 n = rs.members[i];
        CHECK((double)n >= lo);
        CHECK((double)n <= hi);
        // squarefree by trial division
        for (i64 d = 2; d * d <= n; ++d)
            if (n % (d * d) == 0) FAIL("member not squarefree: ", n);
        // factorization correct and classified by a fresh splitting call
        i64 prod = 1;
        int from_p1 = 0, from_p3 = 0;
        for (i64 p : rs.per_member_factorizations[i]) {
            prod *= p;
            auto st = nf::splitting_type(spec, p);
            CHECK(!st.ramified);
            if (st.nu == 1) ++from_p1;
            if (st.nu == 3) ++from_p3;
        }
        CHECK(prod == n);
        CHECK(from_p1 == 1);
        CHECK(from_p3 == 1);
    }
}

TEST_CASE("M_size is non-decreasing in alpha (Q, k=2, default mu)") {
    auto dv = densities_q();
    auto mu = default_mu(dv, 1, 2);
    CHECK(mu.at(1) == doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-12));
    auto pools = build_prime_pools(nf::field_rationals(), 41000);
    i64 prev = -1;
    for (double alpha : {100.0, 1000.0, 10000.0}) {
        ResonatorConfig cfg;
        cfg.C1 = 1.0;
        cfg.alpha = alpha;
        cfg.k = 2;
        cfg.X = 10.0;
        cfg.mu = mu;
        auto rs = build_resonator(nf::field_rationals(), dv, cfg, pools);
        CHECK(rs.M_size >= prev);
        prev = rs.M_size;
    }
}

TEST_CASE("lambda window mapping: members land in [C1 a_l, 2 a_l]") {
    ResonatorConfig cfg;
    cfg.C1 = 0.9;
    cfg.alpha = 120.0;
    cfg.k = 1;
    cfg.X = 10.0;
    cfg.mu = {{2, 0.8}};
    auto spec = nf::field_gaussian();
    auto pools = build_prime_pools(spec, 1000);
    auto rs = build_resonator(spec, densities_qi(), cfg, pools);
    REQUIRE(rs.M_size > 0);
    double mk = 2.0;
    double alpha_lambda =
        2.0 * oracles::kPi * mk *
        std::pow(cfg.alpha / std::pow((double)spec.D, cfg.k), 1.0 / mk);
    double prev = 0.0;
    for (i64 n : rs.members) {
        double l = lambda_n(n, spec, cfg.k);
        CHECK(l > prev);  // strictly increasing
        prev = l;
        CHECK(l >= cfg.C1 * alpha_lambda * (1.0 - 1e-12));
        CHECK(l <= 2.0 * alpha_lambda * (1.0 + 1e-12));
    }
}

TEST_CASE("resonance_weight hand-checked values") {
    auto q = nf::field_rationals();
    SUBCASE("Q, k=2, n=1, alpha=4: e^(-pi^2/4)") {
        auto t = divisor::sieve_divisors(q, 2, 100);
        ResonatorConfig cfg;
        cfg.alpha = 4.0;
        cfg.k = 2;
        cfg.X = 10.0;
        double f = resonance_weight(1, q, t, cfg);
        CHECK(f == doctest::Approx(std::exp(-oracles::kPi * oracles::kPi / 4.0))
                       .epsilon(1e-14));
        CHECK(f == doctest::Approx(0.084803).epsilon(1e-4));
    }
    SUBCASE("Q, k=1, n=4, alpha=4: 0.25 e^(-pi^2)") {
        auto t = divisor::sieve_divisors(q, 1, 100);
        ResonatorConfig cfg;
        cfg.alpha = 4.0;
        cfg.k = 1;
        cfg.X = 10.0;
        double f = resonance_weight(4, q, t, cfg);
        CHECK(f == doctest::Approx(0.25 * std::exp(-oracles::kPi * oracles::kPi))
                       .epsilon(1e-14));
        CHECK(f == doctest::Approx(1.2931e-5).epsilon(1e-3));
    }
    SUBCASE("beyond the X^A1 cutoff the weight vanishes") {
        auto t = divisor::sieve_divisors(q, 1, 100);
        ResonatorConfig cfg;
        cfg.alpha = 4.0;
        cfg.k = 1;
        cfg.X = 2.0;  // X^1.6 = 3.03
        CHECK(resonance_weight(4, q, t, cfg) == 0.0);
        CHECK(resonance_weight(3, q, t, cfg) > 0.0);
    }
}

TEST_CASE("cosine_sum properties and oracle") {
    auto q = nf::field_rationals();
    auto t = divisor::sieve_divisors(q, 2, 1600);
    ResonatorConfig cfg;
    cfg.alpha = 30.0;
    cfg.k = 2;
    cfg.X = 100.0;
    cfg.theta = 0.0;
    SUBCASE("x=0, theta=0 gives the plain weight sum") {
        double direct = 0.0;
        for (i64 n = 1; n <= 1585; ++n) direct += resonance_weight(n, q, t, cfg);
        CHECK(cosine_sum(0.0, q, t, cfg) == doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("naive double-precision loop oracle at x=10") {
        cfg.theta = -oracles::kPi / 4.0;
        double naive = 0.0;
        for (i64 n = 1; n <= 1585; ++n) {
            double f = resonance_weight(n, q, t, cfg);
            naive += f * std::cos(4.0 * oracles::kPi * std::sqrt((double)n) * 10.0 +
                                  cfg.theta);
        }
        CHECK(cosine_sum(10.0, q, t, cfg) ==
              doctest::Approx(naive).epsilon(1e-12));
    }
    SUBCASE("|A(x)| never exceeds sum f(n)") {
        double total = 0.0;
        for (i64 n = 1; n <= 1585; ++n) total += resonance_weight(n, q, t, cfg);
        for (double x : {0.173, 5.5, 77.7, 1234.0})
            CHECK(std::fabs(cosine_sum(x, q, t, cfg)) <= total * (1.0 + 1e-12));
    }
}

TEST_CASE("choose_alpha formulas and guards") {
    SUBCASE("Q, k=2 with the optimizing mu: kappa = -0.808986...") {
        auto dv = densities_q();
        auto mu = default_mu(dv, 1, 2);
        auto ch = choose_alpha(1000.0, dv, mu, 1.0);
        CHECK(ch.kappa == doctest::Approx(-0.8089864961109405).epsilon(1e-12));
        CHECK(ch.mu == 0.5);  // R = 1
        double expect = std::log(1000.0) *
                        std::pow(loglog(1000.0), 0.8089864961109405) *
                        std::pow(logloglog(1000.0), 0.5);
        CHECK(ch.alpha == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("Q(i), k=1: kappa = -0.904493...") {
        auto dv = densities_qi();
        auto mu = default_mu(dv, 2, 1);
        CHECK(mu.at(2) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
        auto ch = choose_alpha(1000.0, dv, mu, 1.0);
        CHECK(ch.kappa == doctest::Approx(-0.9044932480554702).epsilon(1e-12));
    }
    SUBCASE("X at or below e^e is rejected") {
        auto dv = densities_q();
        auto mu = default_mu(dv, 1, 2);
        CHECK_THROWS_AS(choose_alpha(15.0, dv, mu, 1.0), XTooSmall);
        CHECK_NOTHROW(choose_alpha(16.0, dv, mu, 1.0));
    }
}

TEST_CASE("calibrate_alpha reaches M_size near log X (Q, k=2, X=1000)") {
    auto dv = densities_q();
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.k = 2;
    cfg.X = 1000.0;
    cfg.mu = default_mu(dv, 1, 2);
    auto pools = build_prime_pools(nf::field_rationals(), 200000);
    auto cal = calibrate_alpha(nf::field_rationals(), dv, cfg, pools);
    CHECK(cal.rset.M_size >= (i64)std::ceil(std::log(1000.0)));
    // deterministic: same inputs, same calibration
    auto cal2 = calibrate_alpha(nf::field_rationals(), dv, cfg, pools);
    CHECK(cal.C_k == cal2.C_k);
    CHECK(cal.rset.members == cal2.rset.members);
}

TEST_CASE("resonance_search: theorem-shaped properties at X=1000, Q, k=2") {
    auto dv = densities_q();
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.k = 2;
    cfg.X = 1000.0;
    cfg.mu = default_mu(dv, 1, 2);
    cfg.theta = (2 * 1 - 3) * oracles::kPi / 4.0;  // (k r1 - 3) pi/4 for Q
    auto pools = build_prime_pools(nf::field_rationals(), 200000);
    auto cal = calibrate_alpha(nf::field_rationals(), dv, cfg, pools);
    cfg.alpha = cal.choice.alpha;
    auto table = divisor::sieve_divisors(nf::field_rationals(), 2, 63100);
    auto res =
        resonance_search(nf::field_rationals(), table, cfg, cal.rset, 20000);

    // bound_rhs recomputed directly
    double direct = 0.0;
    for (i64 n : cal.rset.members)
        direct += resonance_weight(n, nf::field_rationals(), table, cfg);
    direct *= oracles::kPi / (4.0 * std::exp(1.0));
    CHECK(res.bound_rhs == doctest::Approx(direct).epsilon(1e-12));

    // the searched maximum beats the resonator bound minus the proxies
    CHECK(res.max_abs >= res.bound_rhs - res.err_proxy_resonator - res.err_proxy_tail);
    CHECK(res.max_abs >= 0.5 * res.bound_rhs);

    // and never exceeds the total weight mass
    double total = 0.0;
    for (i64 n = 1; n <= 63095; ++n)
        total += resonance_weight(n, nf::field_rationals(), table, cfg);
    CHECK(res.max_abs <= total * (1.0 + 1e-12));

    // the reported maximum is attained inside the theorem interval
    double logX = std::log(cfg.X);
    CHECK(res.x_star >= 500.0);
    CHECK(res.x_star <= 2.0 * 2.25 * std::pow(1000.0, 1.5) * logX * logX);
}

TEST_CASE("resonance_search: identical results across thread counts") {
    auto dv = densities_q();
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 40.0;
    cfg.k = 2;
    cfg.X = 200.0;
    cfg.mu = default_mu(dv, 1, 2);
    cfg.theta = -oracles::kPi / 4.0;
    auto pools = build_prime_pools(nf::field_rationals(), 200);
    auto rs = build_resonator(nf::field_rationals(), dv, cfg, pools);
    REQUIRE(rs.M_size > 0);
    auto table = divisor::sieve_divisors(nf::field_rationals(), 2,
                                         (i64)std::pow(200.0, 1.6) + 10);
    set_max_threads(1);
    auto serial = resonance_search(nf::field_rationals(), table, cfg, rs, 5000);
    set_max_threads(4);
    auto parallel = resonance_search(nf::field_rationals(), table, cfg, rs, 5000);
    set_max_threads(1);
    CHECK(serial.x_star == parallel.x_star);
    CHECK(serial.max_abs == parallel.max_abs);
    CHECK(serial.bound_rhs == parallel.bound_rhs);
}

TEST_CASE("resonance_search: degenerate singleton resonator") {
    // alpha just above e with a window catching exactly one prime
    ResonatorConfig cfg;
    cfg.C1 = 1.0;
    cfg.alpha = 5.0;
    cfg.k = 2;
    cfg.X = 100.0;
    cfg.mu = {{1, 2.0}};  // floor(2 * loglog 5) = floor(0.95) = 0 -> empty
    auto pools = build_prime_pools(nf::field_rationals(), 100);
    auto rs = build_resonator(nf::field_rationals(), densities_q(), cfg, pools);
    CHECK(rs.members.empty());
    auto table = divisor::sieve_divisors(nf::field_rationals(), 2, 1600);
    CHECK_THROWS_AS(
        resonance_search(nf::field_rationals(), table, cfg, rs, 2000),
        EmptyResonator);
}

TEST_CASE("exponents: golden values") {
    SUBCASE("Q, k=2 (classical divisor problem)") {
        auto e = exponents(1, 1, 2, densities_q());
        CHECK(std::fabs(e.beta - 0.75 * (std::pow(2.0, 4.0 / 3.0) - 1.0)) < 1e-15);
        CHECK(e.beta == doctest::Approx(1.1398815748423097).epsilon(1e-12));
        CHECK(e.gamma == -0.375);
        CHECK(e.gamma_rat == Rational(-3, 8));
        CHECK(e.sign_class == SignClass::omega_unsigned);  // k r1 = 2
        CHECK(e.kappa == doctest::Approx(-0.8089864961109405).epsilon(1e-12));
        CHECK(e.mu_half_R == 0.5);
    }
    SUBCASE("Q(i), k=1 (circle problem): normal-field display agrees") {
        auto e = exponents(2, 0, 1, densities_qi());
        CHECK(e.beta == doctest::Approx(0.75 * (std::pow(2.0, 1.0 / 3.0) - 1.0))
                            .epsilon(1e-12));
        CHECK(e.beta == doctest::Approx(0.1949407874211549).epsilon(1e-12));
        // (1/2) k (mk+1) (mk)^(-2/(mk+1)) - 1/2 - 1/(2mk) at m=2, k=1
        double display = 0.5 * 1.0 * 3.0 * std::pow(2.0, -2.0 / 3.0) - 0.5 - 0.25;
        CHECK(e.beta == doctest::Approx(display).epsilon(1e-12));
        CHECK(e.gamma_rat == Rational(-3, 8));
        CHECK(e.sign_class == SignClass::omega_unsigned);  // k r1 = 0
    }
    SUBCASE("cubic S3 field: the display with the -1/2 - 1/(6k) offset") {
        auto dv = densities_s3();
        for (int k = 1; k <= 3; ++k) {
            auto e = exponents(3, 1, k, dv);
            double kk = k;
            double display = (3.0 * kk + 1.0) / 12.0 *
                                 std::pow(kk, (3.0 * kk - 1.0) / (3.0 * kk + 1.0)) *
                                 (std::pow(3.0, (3.0 * kk - 1.0) / (3.0 * kk + 1.0)) +
                                  1.0) -
                             0.5 - 1.0 / (6.0 * kk);
            CHECK(e.beta == doctest::Approx(display).epsilon(1e-12));
            CHECK(e.gamma_rat == Rational(-(3 * k + 1), 6 * k));  // = -1/2 - 1/(6k)
        }
    }
}

TEST_CASE("exponents: identities and sign classes") {
    SUBCASE("gamma - gamma_gkmn = (mk-1)/(2mk) exactly, random configs") {
        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<int> pick_m(1, 6), pick_k(1, 4);
        std::uniform_real_distribution<double> pick_w(0.05, 1.0);
        int done = 0;
        while (done < 20) {
            int m = pick_m(rng), k = pick_k(rng);
            if (m * k < 2) continue;
            nf::DensityVector dv;
            dv.m = m;
            dv.deltas.assign(m + 1, 0.0);
            double wsum = 0.0;
            std::vector<double> w(m + 1, 0.0);
            for (int nu = 1; nu <= m; ++nu)
                if (pick_w(rng) > 0.5) {
                    w[nu] = pick_w(rng);
                    wsum += nu * w[nu];
                }
            if (wsum == 0.0) continue;
            for (int nu = 1; nu <= m; ++nu)
                if (w[nu] > 0.0) {
                    dv.deltas[nu] = w[nu] / wsum;
                    ++dv.R;
                }
            auto e = exponents(m, m % 2 ? 1 : 0, k, dv);
            i64 mk = (i64)m * k;
            CHECK(e.gamma_rat - e.gamma_gkmn_rat == Rational(mk - 1, 2 * mk));
            CHECK(e.beta_gkmn == e.beta);
            ++done;
        }
    }
    SUBCASE("sign class over kr1 in 0..15") {
        for (i64 v = 0; v <= 15; ++v) {
            SignClass expect = (v % 8 == 3)   ? SignClass::omega_plus
                               : (v % 8 == 7) ? SignClass::omega_minus
                                              : SignClass::omega_unsigned;
            CHECK(sign_class_from(v) == expect);
        }
        CHECK(exponents(3, 1, 3, densities_s3()).sign_class ==
              SignClass::omega_plus);  // k r1 = 3
    }
    SUBCASE("Hafner comparison exponent, Q k=2") {
        auto e = exponents(1, 1, 2, densities_q());
        // (mk-1)/(2mk) ((sum delta nu log nu) k + k log k - k + 1) + k - 1
        double expect = 0.25 * (0.0 + 2.0 * std::log(2.0) - 2.0 + 1.0) + 1.0;
        CHECK(e.beta_hafner == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("mk = 1 violates the theorem hypothesis") {
        CHECK_THROWS_AS(exponents(1, 1, 1, densities_q()), HypothesisViolated);
    }
}
