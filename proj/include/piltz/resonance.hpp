#ifndef PILTZ_RESONANCE_HPP
#define PILTZ_RESONANCE_HPP

#include <map>

#include "piltz/mainterm.hpp"

namespace piltz::resonance {

// Primes up to `bound` classified by nu = number of unramified degree-1
// primes above p.  Index-divisor primes and ramified primes are left out.
struct PrimePools {
    i64 bound = 0;
    std::map<int, std::vector<i64>> pools;
};

PrimePools build_prime_pools(const nf::NumberFieldSpec& spec, i64 bound);

struct ResonatorConfig {
    double C1 = 1.0;            // interval parameter, 0 < C1 < 2
    double alpha = 0.0;         // size scale of the resonator integers
    std::map<int, double> mu;   // nu -> mu_nu (> 0 only where delta_nu > 0)
    double A1 = 8.0 / 5.0;
    double A2 = 3.0 / 2.0;
    double A3 = 1.0;
    double A4 = 9.0 / 10.0;
    double X = 0.0;
    double theta = 0.0;
    int k = 1;
};

// the beta-optimizing weights mu_nu = delta_nu (k nu)^(2mk/(mk+1))
std::map<int, double> default_mu(const nf::DensityVector& densities, int m, int k);

// squarefree n in [C1^mk alpha, 2^mk alpha] with exactly
// floor(mu_nu * loglog(alpha)) prime factors from each pool and no others
struct ResonatorSet {
    std::vector<i64> members;                            // sorted
    i64 M_size = 0;
    std::vector<std::vector<i64>> per_member_factorizations;
};

ResonatorSet build_resonator(const nf::NumberFieldSpec& spec,
                             const nf::DensityVector& densities,
                             const ResonatorConfig& cfg, const PrimePools& pools);

// f(n) = d_K^(k)(n) n^(-(mk+1)/(2mk)) exp(-pi^2 (n/(D^k alpha))^(2/mk))
// for n <= X^A1, zero beyond the cutoff
double resonance_weight(i64 n, const nf::NumberFieldSpec& spec,
                        const divisor::DivisorTable& table,
                        const ResonatorConfig& cfg);

double lambda_n(i64 n, const nf::NumberFieldSpec& spec, int k);

// A(x) = sum_{n <= X^A1} f(n) cos(lambda_n x + theta), ascending compensated
double cosine_sum(double x, const nf::NumberFieldSpec& spec,
                  const divisor::DivisorTable& table, const ResonatorConfig& cfg);

struct SearchResult {
    double x_star = 0.0;
    double max_abs = 0.0;
    double bound_rhs = 0.0;   // (pi/4e) sum_{n in M} f(n)
    double margin = 0.0;      // max_abs - bound_rhs
    double err_proxy_resonator = 0.0;  // X^(A3-A2) e^(2M/C1) sum_{lambda_n<=4alpha_l} f(n)
    double err_proxy_tail = 0.0;       // (X^-A4 / alpha) sum_{n<=X^A1} f(n)
    i64 M_size = 0;
};

// grid max of |A(x)| over [X^A3 / 2, 2 A2^2 X^A2 log^2 X] with golden-section
// polish around the ten best grid candidates; ties resolve to the smallest x
SearchResult resonance_search(const nf::NumberFieldSpec& spec,
                              const divisor::DivisorTable& table,
                              const ResonatorConfig& cfg,
                              const ResonatorSet& rset, i64 grid_points);

struct AlphaChoice {
    double alpha = 0.0;
    double kappa = 0.0;
    double mu = 0.0;  // R/2
};

// alpha = C_k (log X) (loglog X)^(-kappa) (logloglog X)^mu with
// kappa = -1 + sum mu_nu (1 + log delta_nu - log mu_nu)
AlphaChoice choose_alpha(double X, const nf::DensityVector& densities,
                         const std::map<int, double>& mu_map, double C_k);

// bisect C_k until the resonator size reaches ceil(log X)
struct Calibration {
    double C_k = 0.0;
    AlphaChoice choice;
    ResonatorSet rset;
};
Calibration calibrate_alpha(const nf::NumberFieldSpec& spec,
                            const nf::DensityVector& densities,
                            const ResonatorConfig& cfg_template,
                            const PrimePools& pools);

enum class SignClass { omega_plus, omega_minus, omega_unsigned };

const char* sign_class_name(SignClass s);
SignClass sign_class_from(i64 k_times_r1);

struct OmegaExponents {
    double beta = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double mu_half_R = 0.0;
    double beta_gkmn = 0.0;    // identical formula to beta
    double gamma_gkmn = 0.0;   // gamma - (mk-1)/(2mk)
    double beta_hafner = 0.0;
    Rational gamma_rat;        // gamma and gamma' are exact rationals
    Rational gamma_gkmn_rat;
    SignClass sign_class = SignClass::omega_unsigned;
};

OmegaExponents exponents(int m, int r1, int k, const nf::DensityVector& densities);

}  // namespace piltz::resonance

#endif
