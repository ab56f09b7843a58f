// The verification battery behind `piltz verify-all` and the acceptance
// binary.  Each criterion reports PASS/FAIL plus a detail string built only
// from computed values, so two runs of the battery render byte-identical
// reports (criterion 10 checks exactly that).

#include "piltz/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "piltz/resonance.hpp"
#include "piltz/voronoi.hpp"

namespace piltz::acceptance {

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

namespace {

struct Battery {
    std::vector<CriterionResult> results;

    nf::NumberFieldSpec q = nf::field_rationals();
    nf::NumberFieldSpec qi = nf::field_gaussian();
    nf::NumberFieldSpec cubic = nf::field_cubic23();

    divisor::DivisorTable t_q1;    // Q, k=1, 10^6
    divisor::DivisorTable t_qi1;   // Q(i), k=1, 10^6
    mainterm::LaurentExpansion laurent_q;
    mainterm::LaurentExpansion laurent_qi;

    void run(int id, const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        auto t0 = Clock::now();
        try {
            auto [pass, detail] = body();
            r.pass = pass;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        results.push_back(std::move(r));
    }
};

}  // namespace

static std::vector<CriterionResult> run_battery() {
    Battery bat;

    bat.t_q1 = divisor::sieve_divisors(bat.q, 1, 1000000);
    bat.t_qi1 = divisor::sieve_divisors(bat.qi, 1, 1000000);
    bat.laurent_q = mainterm::laurent_coeffs(bat.q, bat.t_q1, 2);
    bat.laurent_qi = mainterm::laurent_coeffs(bat.qi, bat.t_qi1, 2);

    // 1. Gauss-circle exactness
    bat.run(1, "gauss-circle exactness", [&]() {
        auto t0 = Clock::now();
        divisor::PrefixSums ps(bat.t_qi1);
        std::mt19937_64 rng(0xC0FFEE);
        std::uniform_real_distribution<double> pick(0.0, 1000000.0);
        int exact = 0;
        const int trials = 500;
        for (int i = 0; i < trials; ++i) {
            double x = pick(rng);
            if (4 * ps.query(x) + 1 == divisor::oracle_lattice_count(x)) ++exact;
        }
        bool in_time = seconds_since(t0) < 30.0;
        std::ostringstream os;
        os << exact << "/" << trials << " integer-exact";
        if (!in_time) os << " (over time budget)";
        return std::make_pair(exact == trials && in_time, os.str());
    });

    // 2. Dirichlet-divisor exactness
    bat.run(2, "dirichlet-divisor exactness", [&]() {
        auto t0 = Clock::now();
        auto t = divisor::sieve_divisors(bat.q, 2, 100000);
        i64 mismatches = 0;
        for (i64 n = 1; n <= t.N; ++n)
            if (t.at(n) != divisor::oracle_divisor((u64)n)) ++mismatches;
        u64 s10 = divisor::summatory(t, 10.0);
        bool in_time = seconds_since(t0) < 10.0;
        std::ostringstream os;
        os << mismatches << " mismatches in 1..10^5; summatory(10)=" << s10;
        if (!in_time) os << " (over time budget)";
        return std::make_pair(mismatches == 0 && s10 == 27 && in_time, os.str());
    });

    // 3. main-term accuracy
    bat.run(3, "main-term accuracy", [&]() {
        const double gamma_pinned = 0.5772156649;
        double worst_rel = 0.0;
        for (double x : {1e3, 1e6}) {
            double got = mainterm::main_term(bat.q, bat.laurent_q, 2, x);
            double expect = x * std::log(x) + (2.0 * gamma_pinned - 1.0) * x;
            worst_rel = std::max(worst_rel,
                                 std::fabs(got - expect) / std::fabs(expect));
        }
        double c0_err = std::fabs(bat.laurent_qi.c[0] - 0.7853981633974483);
        std::ostringstream os;
        os << "main-term rel err " << fmt_double(worst_rel) << " (tol 1e-5); "
           << "|c0(Qi) - pi/4| = " << fmt_double(c0_err) << " (tol 1e-4)";
        return std::make_pair(worst_rel < 1e-5 && c0_err < 1e-4, os.str());
    });

    // 4. exact densities
    bat.run(4, "exact group densities", [&]() {
        auto s3 = nf::densities_from_group({{2, 1, 3}, {2, 3, 1}});
        auto a5 = nf::densities_from_group({{2, 3, 4, 5, 1}, {2, 3, 1, 4, 5}});
        bool ok = s3.deltas_exact[1] == Rational(1, 2) &&
                  s3.deltas_exact[2] == Rational(0) &&
                  s3.deltas_exact[3] == Rational(1, 6) &&
                  a5.deltas_exact[1] == Rational(1, 4) &&
                  a5.deltas_exact[2] == Rational(1, 3) &&
                  a5.deltas_exact[5] == Rational(1, 60);
        std::ostringstream os;
        os << "S3: " << s3.deltas_exact[1].str() << "," << s3.deltas_exact[2].str()
           << "," << s3.deltas_exact[3].str() << "; A5: " << a5.deltas_exact[1].str()
           << "," << a5.deltas_exact[2].str() << "," << a5.deltas_exact[5].str();
        return std::make_pair(ok, os.str());
    });

    // 5. Chebotarev convergence
    bat.run(5, "chebotarev convergence", [&]() {
        auto t0 = Clock::now();
        auto dcubic = nf::estimate_densities(bat.cubic, 1000000);
        auto dqi = nf::estimate_densities(bat.qi, 1000000);
        double e1 = std::fabs(dcubic.deltas[1] - 0.5);
        double e2 = std::fabs(dcubic.deltas[2] - 0.0);
        double e3 = std::fabs(dcubic.deltas[3] - 1.0 / 6.0);
        double eqi = std::fabs(dqi.deltas[2] - 0.5);
        bool in_time = seconds_since(t0) < 60.0;
        std::ostringstream os;
        os << "cubic errs " << fmt_double(e1) << "/" << fmt_double(e2) << "/"
           << fmt_double(e3) << " (tol 0.02); Qi err " << fmt_double(eqi)
           << " (tol 0.01)";
        if (!in_time) os << " (over time budget)";
        return std::make_pair(
            e1 < 0.02 && e2 < 0.02 && e3 < 0.02 && eqi < 0.01 && in_time, os.str());
    });

    // 6. Voronoi identity, property-based
    bat.run(6, "voronoi identity properties", [&]() {
        auto t0 = Clock::now();
        struct Case {
            const nf::NumberFieldSpec* spec;
            const mainterm::LaurentExpansion* laurent;
            int k;
        };
        auto t_q2 = divisor::sieve_divisors(bat.q, 2, 21000);
        auto t_qi1s = divisor::sieve_divisors(bat.qi, 1, 21000);
        std::vector<std::pair<Case, const divisor::DivisorTable*>> cases = {
            {{&bat.q, &bat.laurent_q, 2}, &t_q2},
            {{&bat.qi, &bat.laurent_qi, 1}, &t_qi1s},
        };
        bool ok = true;
        std::ostringstream os;
        for (auto& [c, table] : cases) {
            double mk = (double)c.spec->m * c.k;
            for (double alpha : {4.0, 9.0}) {
                double rlo = 1e300, rhi = 0.0;
                for (double x : {5.0, 10.0, 20.0}) {
                    auto p = voronoi::default_params(*c.spec, c.k, x, alpha);
                    p.n_terms = 10000;
                    auto rhs1 = voronoi::voronoi_rhs(*c.spec, *table, c.k, p);
                    p.n_terms = 20000;
                    auto rhs2 = voronoi::voronoi_rhs(*c.spec, *table, c.k, p);
                    double drift = std::fabs(rhs2.value - rhs1.value);
                    double budget = 1e-8 * std::pow(x, (mk - 1.0) / 2.0);
                    if (drift >= budget) ok = false;
                    auto rep = voronoi::voronoi_discrepancy(*c.spec, *table,
                                                            *c.laurent, c.k, p);
                    double ratio = rep.abs_diff / std::pow(x, mk / 2.0 - 0.6);
                    rlo = std::min(rlo, ratio);
                    rhi = std::max(rhi, ratio);
                }
                if (rhi / rlo >= 20.0) ok = false;
                os << c.spec->label << " k=" << c.k << " a=" << fmt_double(alpha)
                   << " ratio-spread " << fmt_double(rhi / rlo) << "; ";
            }
        }
        bool in_time = seconds_since(t0) < 300.0;
        if (!in_time) os << "(over time budget)";
        return std::make_pair(ok && in_time, os.str());
    });

    // 7. smoothing inequality grid
    bat.run(7, "smoothing inequality grid", [&]() {
        auto t_q2 = divisor::sieve_divisors(bat.q, 2, 300);
        auto t_qi2 = divisor::sieve_divisors(bat.qi, 2, 28000);
        int held = 0, total = 0;
        for (int k : {1, 2})
            for (double x : {5.0, 10.0})
                for (double alpha : {4.0, 9.0}) {
                    {
                        auto p = voronoi::default_params(bat.q, k, x, alpha);
                        auto& tbl = (k == 1) ? bat.t_q1 : t_q2;
                        auto c = voronoi::smoothing_inequality_check(
                            bat.q, tbl, bat.laurent_q, k, p);
                        ++total;
                        if (c.holds) ++held;
                    }
                    {
                        auto p = voronoi::default_params(bat.qi, k, x, alpha);
                        auto& tbl = (k == 1) ? bat.t_qi1 : t_qi2;
                        auto c = voronoi::smoothing_inequality_check(
                            bat.qi, tbl, bat.laurent_qi, k, p);
                        ++total;
                        if (c.holds) ++held;
                    }
                }
        std::ostringstream os;
        os << held << "/" << total << " hold";
        return std::make_pair(held == total, os.str());
    });

    // 8. resonance bound shape
    bat.run(8, "resonance bound shape", [&]() {
        std::ostringstream os;
        bool ok = true;
        auto run_cfg = [&](const nf::NumberFieldSpec& spec,
                           const nf::DensityVector& dv, int k, int r1,
                           bool enforce_half) {
            resonance::ResonatorConfig cfg;
            cfg.C1 = 1.0;
            cfg.k = k;
            cfg.X = 1000.0;
            cfg.mu = resonance::default_mu(dv, spec.m, k);
            cfg.theta = (double)(k * r1 - 3) * 3.14159265358979323846 / 4.0;
            auto pools = resonance::build_prime_pools(spec, 200000);
            auto cal = resonance::calibrate_alpha(spec, dv, cfg, pools);
            cfg.alpha = cal.choice.alpha;
            auto table = divisor::sieve_divisors(
                spec, k, (i64)std::pow(1000.0, 1.6) + 10);
            auto res =
                resonance::resonance_search(spec, table, cfg, cal.rset, 150000);
            bool lower = res.max_abs >=
                         res.bound_rhs - res.err_proxy_resonator - res.err_proxy_tail;
            bool half = res.max_abs >= 0.5 * res.bound_rhs;
            if (!lower) ok = false;
            if (enforce_half && !half) ok = false;
            os << spec.label << " k=" << k << ": M=" << res.M_size << " max|A|="
               << fmt_double(res.max_abs) << " bound=" << fmt_double(res.bound_rhs)
               << " margin=" << fmt_double(res.margin) << "; ";
        };
        auto dq = nf::densities_from_group({{1}});
        auto dqi = nf::densities_from_group({{2, 1}});
        run_cfg(bat.q, dq, 2, bat.q.r1, true);
        run_cfg(bat.qi, dqi, 1, bat.qi.r1, false);
        return std::make_pair(ok, os.str());
    });

    // 9. exponent golden values
    bat.run(9, "exponent golden values", [&]() {
        bool ok = true;
        std::ostringstream os;
        auto dq = nf::densities_from_group({{1}});
        auto e = resonance::exponents(1, 1, 2, dq);
        double beta_expect = 0.75 * (std::pow(2.0, 4.0 / 3.0) - 1.0);
        if (std::fabs(e.beta - beta_expect) > 1e-12) ok = false;
        if (!(e.gamma_rat == Rational(-3, 8)) || e.gamma != -0.375) ok = false;
        os << "beta(Q,2)=" << fmt_double(e.beta) << " gamma=" << e.gamma_rat.str();

        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<int> pick_m(1, 6), pick_k(1, 4);
        std::uniform_real_distribution<double> pick_w(0.05, 1.0);
        int done = 0, identity_ok = 0;
        while (done < 20) {
            int m = pick_m(rng), k = pick_k(rng);
            if (m * k < 2) continue;
            nf::DensityVector dv;
            dv.m = m;
            dv.deltas.assign(m + 1, 0.0);
            std::vector<double> w(m + 1, 0.0);
            double wsum = 0.0;
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
            auto er = resonance::exponents(m, (m % 2) ? 1 : 0, k, dv);
            i64 mk = (i64)m * k;
            if (er.gamma_rat - er.gamma_gkmn_rat == Rational(mk - 1, 2 * mk))
                ++identity_ok;
            ++done;
        }
        if (identity_ok != 20) ok = false;
        os << "; gamma-gamma' identity " << identity_ok << "/20";

        int sign_ok = 0;
        for (i64 v = 0; v <= 15; ++v) {
            auto expect = (v % 8 == 3)   ? resonance::SignClass::omega_plus
                          : (v % 8 == 7) ? resonance::SignClass::omega_minus
                                         : resonance::SignClass::omega_unsigned;
            if (resonance::sign_class_from(v) == expect) ++sign_ok;
        }
        if (sign_ok != 16) ok = false;
        os << "; sign classes " << sign_ok << "/16";
        return std::make_pair(ok, os.str());
    });

    return bat.results;
}

static std::string render_lines(const std::vector<CriterionResult>& criteria) {
    std::ostringstream os;
    for (const auto& c : criteria)
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": "
           << c.detail << "\n";
    return os.str();
}

Report run_all() {
    Report report;
    auto first = run_battery();
    auto second = run_battery();

    report.criteria = first;
    CriterionResult c10;
    c10.id = 10;
    c10.name = "determinism";
    auto t0 = Clock::now();
    std::string ra = render_lines(first), rb = render_lines(second);
    c10.pass = (ra == rb);
    c10.detail = c10.pass ? "two runs rendered byte-identical reports"
                          : "reports differ between runs";
    c10.seconds = seconds_since(t0);
    for (const auto& c : second) c10.seconds += c.seconds;
    report.criteria.push_back(c10);

    report.all_pass = true;
    for (const auto& c : report.criteria) report.all_pass &= c.pass;
    return report;
}

std::string render(const Report& report) {
    std::string out = render_lines(report.criteria);
    out += report.all_pass ? "ALL CRITERIA PASS\n" : "SOME CRITERIA FAIL\n";
    return out;
}

}  // namespace piltz::acceptance
