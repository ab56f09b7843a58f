// Resonator construction and the exponent calculator.
//
// The resonator set M collects squarefree n in [C1^mk alpha, 2^mk alpha]
// whose prime factors are prescribed per splitting class: exactly
// floor(mu_nu loglog alpha) primes from each P_nu, none elsewhere.  Under
// n -> lambda_n = 2 pi mk (n/D^k)^(1/mk) the window maps onto
// [C1 alpha_l, 2 alpha_l] with alpha_l = 2 pi mk (alpha/D^k)^(1/mk); the
// two alpha scales are kept distinct throughout.
//
// log_2/log_3 here are iterated logarithms (loglog, logloglog).

#include "piltz/resonance.hpp"

#include <algorithm>
#include <mutex>

namespace piltz::resonance {

static constexpr double kPi = 3.14159265358979323846;
static constexpr double kE = 2.71828182845904523536;

PrimePools build_prime_pools(const nf::NumberFieldSpec& spec, i64 bound) {
    PrimePools pp;
    pp.bound = bound;
    for (i64 p : primes_up_to(bound)) {
        if (std::find(spec.index_sq_divisors.begin(), spec.index_sq_divisors.end(),
                      p) != spec.index_sq_divisors.end())
            continue;
        nf::SplittingType st = nf::splitting_type(spec, p);
        if (st.ramified || st.nu == 0) continue;
        pp.pools[st.nu].push_back(p);
    }
    return pp;
}

std::map<int, double> default_mu(const nf::DensityVector& densities, int m, int k) {
    double mk = (double)m * k;
    std::map<int, double> mu;
    for (int nu : densities.support())
        mu[nu] = densities.deltas[nu] *
                 std::pow((double)k * nu, 2.0 * mk / (mk + 1.0));
    return mu;
}

ResonatorSet build_resonator(const nf::NumberFieldSpec& spec,
                             const nf::DensityVector& densities,
                             const ResonatorConfig& cfg, const PrimePools& pools) {
    if (!(cfg.C1 > 0.0 && cfg.C1 < 2.0))
        throw error("build_resonator: C1 must lie in (0,2)");
    if (!(cfg.alpha > kE))
        throw error("build_resonator: alpha must exceed e (loglog must be positive)");
    double mk = (double)spec.m * cfg.k;
    double lo = std::pow(cfg.C1, mk) * cfg.alpha;
    double hi = std::pow(2.0, mk) * cfg.alpha;
    if ((double)pools.bound < hi)
        throw PoolTooSmall("prime pools reach " + std::to_string(pools.bound) +
                           " but the window needs " + std::to_string(hi));

    double ll = loglog(cfg.alpha);
    struct Class {
        int r;                          // required number of primes
        const std::vector<i64>* pool;
    };
    std::vector<Class> classes;
    for (auto& [nu, mu_nu] : cfg.mu) {
        if (!(mu_nu > 0.0))
            throw error("build_resonator: mu_nu must be positive");
        if (nu > densities.m || densities.deltas[nu] <= 0.0)
            throw error("build_resonator: mu assigned to nu with delta_nu = 0");
        int r = (int)std::floor(mu_nu * ll);
        if (r < 0) throw error("build_resonator: negative factor count");
        if (r == 0) continue;
        auto it = pools.pools.find(nu);
        if (it == pools.pools.end() || (int)it->second.size() < r)
            throw PoolTooSmall("pool for nu=" + std::to_string(nu) +
                               " has too few primes");
        classes.push_back({r, &it->second});
    }

    ResonatorSet out;
    std::vector<i64> chosen;
    // depth-first products, primes ascending within each class
    auto dfs = [&](auto&& self, size_t ci, size_t pos, int picked, i64 prod) -> void {
        if ((double)prod > hi) return;
        if (ci == classes.size()) {
            if ((double)prod >= lo && (double)prod <= hi) {
                out.members.push_back(prod);
                out.per_member_factorizations.push_back(chosen);
            }
            return;
        }
        const Class& cl = classes[ci];
        if (picked == cl.r) {
            self(self, ci + 1, 0, 0, prod);
            return;
        }
        int remaining = cl.r - picked;
        for (size_t i = pos; i + remaining <= cl.pool->size(); ++i) {
            i64 p = (*cl.pool)[i];
            if ((double)prod * (double)p > hi) break;  // pool ascending
            chosen.push_back(p);
            self(self, ci, i + 1, picked + 1, prod * p);
            chosen.pop_back();
        }
    };
    if (classes.empty()) {
        // the empty product: n = 1, inside the window only if lo <= 1
        if (lo <= 1.0 && hi >= 1.0) {
            out.members.push_back(1);
            out.per_member_factorizations.push_back({});
        }
    } else {
        dfs(dfs, 0, 0, 0, 1);
    }

    // sort members with their factorizations attached
    std::vector<size_t> order(out.members.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return out.members[a] < out.members[b];
    });
    ResonatorSet sorted;
    for (size_t i : order) {
        sorted.members.push_back(out.members[i]);
        sorted.per_member_factorizations.push_back(out.per_member_factorizations[i]);
    }
    sorted.M_size = (i64)sorted.members.size();
    return sorted;
}

double lambda_n(i64 n, const nf::NumberFieldSpec& spec, int k) {
    double mk = (double)spec.m * k;
    double dk = std::pow((double)spec.D, (double)k);
    return 2.0 * kPi * mk * std::pow((double)n / dk, 1.0 / mk);
}

double resonance_weight(i64 n, const nf::NumberFieldSpec& spec,
                        const divisor::DivisorTable& table,
                        const ResonatorConfig& cfg) {
    if (n < 1) throw error("resonance_weight: n must be >= 1");
    if ((double)n > std::pow(cfg.X, cfg.A1)) return 0.0;
    if (n > table.N)
        throw RangeExceeded("resonance_weight: n beyond the sieved table");
    u64 d = table.values[n];
    if (d == 0) return 0.0;
    double mk = (double)spec.m * cfg.k;
    double dk = std::pow((double)spec.D, (double)cfg.k);
    return (double)d * std::pow((double)n, -(mk + 1.0) / (2.0 * mk)) *
           std::exp(-kPi * kPi *
                    std::pow((double)n / (dk * cfg.alpha), 2.0 / mk));
}

double cosine_sum(double x, const nf::NumberFieldSpec& spec,
                  const divisor::DivisorTable& table, const ResonatorConfig& cfg) {
    i64 cutoff = (i64)std::floor(std::pow(cfg.X, cfg.A1));
    if (cutoff > table.N)
        throw RangeExceeded("cosine_sum: table shorter than X^A1");
    CompensatedSum sum;
    for (i64 n = 1; n <= cutoff; ++n) {
        double f = resonance_weight(n, spec, table, cfg);
        if (f == 0.0) continue;
        sum.add(f * std::cos(lambda_n(n, spec, cfg.k) * x + cfg.theta));
    }
    return sum.value();
}

SearchResult resonance_search(const nf::NumberFieldSpec& spec,
                              const divisor::DivisorTable& table,
                              const ResonatorConfig& cfg,
                              const ResonatorSet& rset, i64 grid_points) {
    if (rset.members.empty())
        throw EmptyResonator("resonator set is empty; bound_rhs undefined");
    if (grid_points < 1000)
        throw error("resonance_search: need at least 10^3 grid points");

    SearchResult res;
    res.M_size = rset.M_size;
    {
        CompensatedSum s;
        for (i64 n : rset.members)
            s.add(resonance_weight(n, spec, table, cfg));
        res.bound_rhs = kPi / (4.0 * kE) * s.value();
    }

    // pruned term list for the search loops; the final value is recomputed
    // with the full sum at the winning x
    i64 cutoff = (i64)std::floor(std::pow(cfg.X, cfg.A1));
    if (cutoff > table.N)
        throw RangeExceeded("resonance_search: table shorter than X^A1");
    std::vector<double> lam, wgt;
    double fmax = 0.0;
    for (i64 n = 1; n <= cutoff; ++n) {
        double f = resonance_weight(n, spec, table, cfg);
        if (f > 0.0) fmax = std::max(fmax, f);
    }
    for (i64 n = 1; n <= cutoff; ++n) {
        double f = resonance_weight(n, spec, table, cfg);
        if (f > fmax * 1e-18) {
            lam.push_back(lambda_n(n, spec, cfg.k));
            wgt.push_back(f);
        }
    }
    auto eval_pruned = [&](double x) {
        CompensatedSum s;
        for (size_t i = 0; i < lam.size(); ++i)
            s.add(wgt[i] * std::cos(lam[i] * x + cfg.theta));
        return std::fabs(s.value());
    };

    double logX = std::log(cfg.X);
    double x_lo = std::pow(cfg.X, cfg.A3) / 2.0;
    double x_hi = 2.0 * cfg.A2 * cfg.A2 * std::pow(cfg.X, cfg.A2) * logX * logX;
    double spacing = (x_hi - x_lo) / (double)(grid_points - 1);

    struct Cand {
        double val;
        double x;
        bool operator<(const Cand& o) const {
            return val > o.val || (val == o.val && x < o.x);
        }
    };
    std::vector<Cand> top;
    std::mutex mtx;
    parallel_chunks(0, grid_points, [&](i64 lo_i, i64 hi_i) {
        std::vector<Cand> local;
        for (i64 i = lo_i; i < hi_i; ++i) {
            double x = x_lo + spacing * (double)i;
            local.push_back({eval_pruned(x), x});
            std::push_heap(local.begin(), local.end());
            if (local.size() > 10) {
                std::pop_heap(local.begin(), local.end());
                local.pop_back();
            }
        }
        std::lock_guard<std::mutex> lock(mtx);
        top.insert(top.end(), local.begin(), local.end());
    });
    std::sort(top.begin(), top.end());
    if (top.size() > 10) top.resize(10);

    // golden-section polish in [x - spacing, x + spacing], tracking best-seen
    Cand best = top[0];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (const Cand& c : top) {
        double a = std::max(x_lo, c.x - spacing), b = std::min(x_hi, c.x + spacing);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = eval_pruned(x1), f2 = eval_pruned(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = eval_pruned(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = eval_pruned(x1);
            }
            Cand now{std::max(f1, f2), f1 >= f2 ? x1 : x2};
            if (now < best) best = now;
        }
    }

    res.x_star = best.x;
    res.max_abs = std::fabs(cosine_sum(best.x, spec, table, cfg));
    res.margin = res.max_abs - res.bound_rhs;

    // error-term proxies with constant 1
    double mk = (double)spec.m * cfg.k;
    {
        i64 nmax = std::min(cutoff, (i64)std::ceil(std::pow(4.0, mk) * cfg.alpha));
        CompensatedSum s;
        for (i64 n = 1; n <= nmax; ++n)
            s.add(resonance_weight(n, spec, table, cfg));
        res.err_proxy_resonator = std::pow(cfg.X, cfg.A3 - cfg.A2) *
                                  std::exp(2.0 * (double)rset.M_size / cfg.C1) *
                                  s.value();
    }
    {
        CompensatedSum s;
        for (i64 n = 1; n <= cutoff; ++n)
            s.add(resonance_weight(n, spec, table, cfg));
        res.err_proxy_tail = std::pow(cfg.X, -cfg.A4) / cfg.alpha * s.value();
    }
    return res;
}

AlphaChoice choose_alpha(double X, const nf::DensityVector& densities,
                         const std::map<int, double>& mu_map, double C_k) {
    // needs logloglog X > 0, i.e. X > e^e
    if (!(X > std::exp(kE)))
        throw XTooSmall("choose_alpha: X must exceed e^e");
    AlphaChoice out;
    double kappa = -1.0;
    for (auto& [nu, mu_nu] : mu_map) {
        double delta = densities.deltas[nu];
        if (!(delta > 0.0) || !(mu_nu > 0.0))
            throw error("choose_alpha: mu/delta must be positive on the support");
        kappa += mu_nu * (1.0 + std::log(delta) - std::log(mu_nu));
    }
    out.kappa = kappa;
    out.mu = (double)densities.R / 2.0;
    out.alpha = C_k * std::log(X) * std::pow(loglog(X), -kappa) *
                std::pow(logloglog(X), out.mu);
    return out;
}

Calibration calibrate_alpha(const nf::NumberFieldSpec& spec,
                            const nf::DensityVector& densities,
                            const ResonatorConfig& cfg_template,
                            const PrimePools& pools) {
    i64 target = (i64)std::ceil(std::log(cfg_template.X));
    double mk = (double)spec.m * cfg_template.k;
    // alpha is linear in C_k; keep the window [C1^mk a, 2^mk a] inside the pools
    double per_unit =
        choose_alpha(cfg_template.X, densities, cfg_template.mu, 1.0).alpha;
    double c_lo = 1.02 * kE / per_unit;
    double c_hi = (double)pools.bound / std::pow(2.0, mk) / per_unit;
    if (c_hi <= c_lo)
        throw PoolTooSmall("calibrate_alpha: pools cannot host any valid window");

    auto measure = [&](double C_k) -> std::pair<AlphaChoice, ResonatorSet> {
        AlphaChoice ch = choose_alpha(cfg_template.X, densities, cfg_template.mu, C_k);
        ResonatorConfig cfg = cfg_template;
        cfg.alpha = ch.alpha;
        return {ch, build_resonator(spec, densities, cfg, pools)};
    };
    auto [ch_hi, rs_hi] = measure(c_hi);
    if (rs_hi.M_size < target)
        return {c_hi, ch_hi, rs_hi};  // even the largest feasible scale falls short
    double lo = c_lo, hi = c_hi;
    for (int it = 0; it < 60; ++it) {
        double mid = std::sqrt(lo * hi);
        auto [ch, rs] = measure(mid);
        if (rs.M_size >= target)
            hi = mid;
        else
            lo = mid;
    }
    auto [ch, rs] = measure(hi);
    return {hi, ch, rs};
}

const char* sign_class_name(SignClass s) {
    switch (s) {
        case SignClass::omega_plus: return "omega_plus";
        case SignClass::omega_minus: return "omega_minus";
        default: return "omega_unsigned";
    }
}

SignClass sign_class_from(i64 k_times_r1) {
    i64 r = ((k_times_r1 % 8) + 8) % 8;
    if (r == 3) return SignClass::omega_plus;
    if (r == 7) return SignClass::omega_minus;
    return SignClass::omega_unsigned;
}

OmegaExponents exponents(int m, int r1, int k, const nf::DensityVector& densities) {
    i64 mk = (i64)m * k;
    if (mk < 2)
        throw HypothesisViolated("exponents: requires mk >= 2");
    double mkd = (double)mk;

    OmegaExponents e;
    double sum_pow = 0.0, sum_nlogn = 0.0;
    for (int nu = 1; nu <= densities.m; ++nu) {
        double delta = densities.deltas[nu];
        if (delta <= 0.0) continue;
        sum_pow += delta * std::pow((double)k * nu, 2.0 * mkd / (mkd + 1.0));
        sum_nlogn += delta * (double)nu * std::log((double)nu);
    }
    e.beta = (mkd + 1.0) / (2.0 * mkd) * (sum_pow - 1.0);
    e.beta_gkmn = e.beta;

    e.gamma_rat = Rational(-(mk + 1) * densities.R, 4 * mk);
    e.gamma_gkmn_rat = e.gamma_rat - Rational(mk - 1, 2 * mk);
    e.gamma = e.gamma_rat.to_double();
    e.gamma_gkmn = e.gamma_gkmn_rat.to_double();

    e.beta_hafner = (mkd - 1.0) / (2.0 * mkd) *
                        (sum_nlogn * k + k * std::log((double)k) - k + 1.0) +
                    (double)k - 1.0;

    // kappa at the default mu_nu = delta_nu (k nu)^(2mk/(mk+1))
    double kappa = -1.0;
    for (int nu = 1; nu <= densities.m; ++nu) {
        double delta = densities.deltas[nu];
        if (delta <= 0.0) continue;
        double mu_nu = delta * std::pow((double)k * nu, 2.0 * mkd / (mkd + 1.0));
        kappa += mu_nu * (1.0 + std::log(delta) - std::log(mu_nu));
    }
    e.kappa = kappa;
    e.mu_half_R = (double)densities.R / 2.0;
    e.sign_class = sign_class_from((i64)k * r1);
    return e;
}

}  // namespace piltz::resonance
