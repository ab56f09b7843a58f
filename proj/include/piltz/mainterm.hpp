#ifndef PILTZ_MAINTERM_HPP
#define PILTZ_MAINTERM_HPP

#include <cmath>
#include <limits>

#include "piltz/divisor.hpp"

namespace piltz::mainterm {

// zeta_K(s) = c[0]/(s-1) + c[1] + c[2](s-1) + ...; c[0] is the residue.
struct LaurentExpansion {
    std::string field_label;
    int order = 0;                  // c and est_error have order+1 entries
    std::vector<double> c;
    std::vector<double> est_error;
};

// Res_{w=1} zeta_K^k(w) x^w / w  =  x * sum_{j<k} b[j] (log x)^j
struct MainTermPoly {
    int k = 1;
    std::vector<double> b;          // degree k-1

    double eval(double x) const {
        double L = std::log(x), acc = 0.0, pw = 1.0;
        for (double bj : b) { acc += bj * pw; pw *= L; }
        return x * acc;
    }
};

struct ZetaValue {
    double value = 0.0;
    double err_bound = 0.0;   // tail estimate O(N^(theta - s)), theta = 1 - 1/m
};

// Truncated Dirichlet series with an Abel-summation tail correction:
//   sum_{n<=N} a_K(n) n^{-s} + rho_hat * N^{1-s}/(s-1),
// rho_hat = summatory(N)/N.  Requires a k=1 table and 1 < s <= 2.
ZetaValue zeta_K_near_1(const nf::NumberFieldSpec& spec,
                        const divisor::DivisorTable& table, double s);

struct LaurentOptions {
    double h0 = 1.0 / 16.0;  // base offset; nodes at s = 1 + h0 * 2^-i
    int levels = 6;          // Richardson depth
    // when set, throw ExtrapolationUnstable if est_error exceeds
    // tol * max(1, |c|) for the matching coefficient
    double tol_c0 = std::numeric_limits<double>::quiet_NaN();
    double tol_rest = std::numeric_limits<double>::quiet_NaN();
};

LaurentExpansion laurent_coeffs(const nf::NumberFieldSpec& spec,
                                const divisor::DivisorTable& table, int order,
                                const LaurentOptions& opts = {});

MainTermPoly main_term_poly(const nf::NumberFieldSpec& spec,
                            const LaurentExpansion& laurent, int k);

double main_term(const nf::NumberFieldSpec& spec, const LaurentExpansion& laurent,
                 int k, double x);

// Delta_K^(k)(x) = summatory(x) - main_term(x)
double delta(const nf::NumberFieldSpec& spec, const divisor::DivisorTable& table,
             const LaurentExpansion& laurent, int k, double x);

}  // namespace piltz::mainterm

#endif
