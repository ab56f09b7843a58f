#ifndef PILTZ_VORONOI_HPP
#define PILTZ_VORONOI_HPP

#include "piltz/mainterm.hpp"

namespace piltz::voronoi {

// Parameters of the smoothed identity.  Both sides are functions of (x, alpha);
// the argument of Delta is x^(mk) e^(u/x) and the Gaussian weight is
// exp(-u^2 alpha^(2/mk)).
struct SmoothingParams {
    double x = 2.0;          // >= 2
    double alpha = 2.0;      // >= 2
    double u_cutoff = 1.0;   // integration window; <= x
    double quad_step = 0.0;  // <= alpha^(-1/mk)/8
    i64 n_terms = 1;         // series truncation
};

// u_cutoff capturing all but ~1e-12 of the Gaussian mass (never beyond x),
// quad_step at 1/16 of the bound, n_terms where the exponential factor
// drops below 1e-10.
SmoothingParams default_params(const nf::NumberFieldSpec& spec, int k, double x,
                               double alpha);

struct SmoothedLhs {
    double value = 0.0;
    double quad_error = 0.0;  // step-halving estimate
};

// (alpha^(1/mk)/sqrt(pi)) Int_{|u|<=U} Delta(x^mk e^(u/x)) e^(-u^2 a^(2/mk)) du
// Composite trapezoid with subintervals aligned to the jumps of Delta; the
// value at a jump uses the right limit, matching sum_{n<=x}.
SmoothedLhs smoothed_lhs(const nf::NumberFieldSpec& spec,
                         const divisor::DivisorTable& table,
                         const mainterm::LaurentExpansion& laurent, int k,
                         const SmoothingParams& params);

struct SeriesRhs {
    double value = 0.0;
    double last_term_magnitude = 0.0;  // truncation diagnostic
};

// (D^(1/2m)/(pi sqrt(mk))) x^((mk-1)/2) *
//   sum_{n<=N} d(n) n^(-(mk+1)/(2mk)) exp(-pi^2 (n/(D^k a))^(2/mk))
//             cos(2 pi mk (n/D^k)^(1/mk) x + (k r1 - 3) pi/4)
SeriesRhs voronoi_rhs(const nf::NumberFieldSpec& spec,
                      const divisor::DivisorTable& table_for_series, int k,
                      const SmoothingParams& params);

struct DiscrepancyReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double predicted_error_scale = 0.0;      // x^(mk/2 - 3/5) alpha^(1/2)
    double predicted_error_scale_alt = 0.0;  // x^(mk/2 - 3/5) alpha^(2/mk)
    double lhs_quad_error = 0.0;
    double rhs_last_term = 0.0;
};

DiscrepancyReport voronoi_discrepancy(const nf::NumberFieldSpec& spec,
                                      const divisor::DivisorTable& table,
                                      const mainterm::LaurentExpansion& laurent,
                                      int k, const SmoothingParams& params);

struct SmoothingCheck {
    double max_side = 0.0;       // max over h in [-1,1] of Delta(x^mk e^h)
    double integral_side = 0.0;  // smoothed_lhs
    double tail_allowance = 0.0;
    bool holds = false;
};

// max_{-1<=h<=1} Delta(x^mk e^h) >= smoothed integral + O(x^(mk-1) e^(-x^2))
SmoothingCheck smoothing_inequality_check(const nf::NumberFieldSpec& spec,
                                          const divisor::DivisorTable& table,
                                          const mainterm::LaurentExpansion& laurent,
                                          int k, const SmoothingParams& params);

}  // namespace piltz::voronoi

#endif
