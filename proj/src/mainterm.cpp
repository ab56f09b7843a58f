// Numerical Laurent data for zeta_K about s = 1 and the residue main term.
//
// The expansion zeta_K(s) = c0/(s-1) + c1 + c2(s-1) + ... is extracted from
// g(s) = (s-1) zeta_K(s), which is analytic at 1 with g = c0 + c1(s-1) + ...
// We evaluate g at nodes s_i = 1 + h0 * 2^-i; the j-th divided difference
// over a window of j+1 consecutive nodes equals c_j plus a power series in
// the window scale, and the windows shrink geometrically, so Richardson
// extrapolation with ratio 2 removes the leading terms order by order.
//
// The main term Res_{w=1} zeta_K^k(w) x^w / w is read off the series product
//   (c0 + c1 u + ...)^k * e^(uL) * 1/(1+u),   u = w-1, L = log x:
// b[j] = [u^(k-1-j)] (C(u)^k / (1+u)) / j!, so the main term is
// x * sum b[j] L^j with leading coefficient c0^k/(k-1)!.

#include "piltz/mainterm.hpp"

#include <algorithm>

namespace piltz::mainterm {

static double tail_theta(const nf::NumberFieldSpec& spec) {
    return 1.0 - 1.0 / spec.m;
}

// one pass over the table evaluating the corrected series at several s
static std::vector<ZetaValue> zeta_many(const nf::NumberFieldSpec& spec,
                                        const divisor::DivisorTable& table,
                                        const std::vector<double>& ss) {
    if (table.k != 1)
        throw error("zeta_K_near_1: needs a k=1 coefficient table");
    for (double s : ss)
        if (!(s > 1.0 && s <= 2.0))
            throw error("zeta_K_near_1: s must satisfy 1 < s <= 2");
    if (table.N < 100)
        throw InsufficientRange("zeta_K_near_1: table too short");
    double theta = tail_theta(spec);
    double N = (double)table.N;
    for (double s : ss)
        if (std::pow(N, theta - s) >= 0.5)
            throw InsufficientRange("zeta_K_near_1: tail estimate not small");

    size_t ns = ss.size();
    std::vector<CompensatedSum> sums(ns);
    for (i64 n = 1; n <= table.N; ++n) {
        u64 a = table.values[n];
        if (a == 0) continue;
        double logn = std::log((double)n);
        for (size_t j = 0; j < ns; ++j)
            sums[j].add((double)a * std::exp(-ss[j] * logn));
    }
    double rho_hat = (double)divisor::summatory(table, N) / N;

    std::vector<ZetaValue> out(ns);
    for (size_t j = 0; j < ns; ++j) {
        double s = ss[j];
        double v = sums[j].value() + rho_hat * std::pow(N, 1.0 - s) / (s - 1.0);
        double err =
            (1.0 + rho_hat) * std::pow(N, theta - s) + 1e-14 * std::fabs(v);
        out[j] = {v, err};
    }
    return out;
}

ZetaValue zeta_K_near_1(const nf::NumberFieldSpec& spec,
                        const divisor::DivisorTable& table, double s) {
    return zeta_many(spec, table, {s})[0];
}

LaurentExpansion laurent_coeffs(const nf::NumberFieldSpec& spec,
                                const divisor::DivisorTable& table, int order,
                                const LaurentOptions& opts) {
    if (order < 0 || order > 4)
        throw error("laurent_coeffs: order must be in [0,4]");
    int levels = opts.levels;
    if (levels < 3) throw error("laurent_coeffs: need at least 3 levels");
    int nodes = levels + order;

    std::vector<double> s(nodes), offset(nodes);
    for (int i = 0; i < nodes; ++i) {
        offset[i] = opts.h0 * std::pow(2.0, -i);
        s[i] = 1.0 + offset[i];
    }
    auto zs = zeta_many(spec, table, s);
    std::vector<double> g(nodes);
    double node_err = 0.0;
    for (int i = 0; i < nodes; ++i) {
        g[i] = offset[i] * zs[i].value;
        node_err = std::max(node_err, offset[i] * zs[i].err_bound);
    }

    // full divided-difference table: dd[j][i] = [s_i .. s_{i+j}] g
    std::vector<std::vector<double>> dd(order + 1);
    dd[0] = g;
    for (int j = 1; j <= order; ++j) {
        dd[j].resize(nodes - j);
        for (int i = 0; i + j < nodes; ++i)
            dd[j][i] = (dd[j - 1][i] - dd[j - 1][i + 1]) / (s[i] - s[i + j]);
    }

    LaurentExpansion le;
    le.field_label = spec.label;
    le.order = order;
    le.c.resize(order + 1);
    le.est_error.resize(order + 1);

    for (int j = 0; j <= order; ++j) {
        // Richardson on rows 0..levels-1 of column j (window scale halves per row)
        std::vector<std::vector<double>> R(levels);
        for (int i = 0; i < levels; ++i) {
            R[i].resize(i + 1);
            R[i][0] = dd[j][i];
            for (int t = 1; t <= i; ++t)
                R[i][t] = R[i][t - 1] +
                          (R[i][t - 1] - R[i - 1][t - 1]) / (std::pow(2.0, t) - 1.0);
        }
        double best = R[levels - 1][levels - 1];
        double resid = std::fabs(best - R[levels - 2][levels - 2]) +
                       std::fabs(best - R[levels - 1][levels - 2]);

        // noise amplification of the j-th divided difference at the finest
        // window used, times a modest factor for the extrapolation weights
        double amp = 1.0;
        if (j > 0) {
            int i0 = levels - 1;
            for (int t = 0; t <= j; ++t) {
                double prod = 1.0;
                for (int u = 0; u <= j; ++u)
                    if (u != t) prod *= std::fabs(s[i0 + t] - s[i0 + u]);
                amp = std::max(amp, 1.0 / prod);
            }
            amp *= (double)(j + 1);
        }
        le.c[j] = best;
        le.est_error[j] = 2.0 * resid + 4.0 * amp * node_err;
    }

    if (le.c[0] <= 0.0)
        throw error("laurent_coeffs: residue came out non-positive");
    auto enforce = [&](int j, double tol) {
        if (std::isnan(tol)) return;
        if (le.est_error[j] > tol * std::max(1.0, std::fabs(le.c[j])))
            throw ExtrapolationUnstable(
                "laurent c[" + std::to_string(j) + "] error estimate " +
                fmt_double(le.est_error[j]) + " exceeds tolerance");
    };
    enforce(0, opts.tol_c0);
    for (int j = 1; j <= order; ++j) enforce(j, opts.tol_rest);
    return le;
}

static std::vector<double> trunc_mul(const std::vector<double>& a,
                                     const std::vector<double>& b, int len) {
    std::vector<double> r(len, 0.0);
    for (int i = 0; i < (int)a.size() && i < len; ++i)
        for (int j = 0; j < (int)b.size() && i + j < len; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

MainTermPoly main_term_poly(const nf::NumberFieldSpec& spec,
                            const LaurentExpansion& laurent, int k) {
    (void)spec;
    if (k < 1) throw error("main_term_poly: k must be >= 1");
    if (laurent.order < k)
        throw InsufficientOrder("main_term_poly: laurent order " +
                                std::to_string(laurent.order) + " < k = " +
                                std::to_string(k));
    int len = k;  // coefficients of u^0 .. u^(k-1)
    std::vector<double> ck = {1.0};
    for (int t = 0; t < k; ++t) ck = trunc_mul(ck, laurent.c, len);
    std::vector<double> inv1pu(len);
    for (int i = 0; i < len; ++i) inv1pu[i] = (i % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> prod = trunc_mul(ck, inv1pu, len);

    MainTermPoly poly;
    poly.k = k;
    poly.b.resize(k);
    double fact = 1.0;
    for (int j = 0; j < k; ++j) {
        if (j > 0) fact *= j;
        poly.b[j] = prod[k - 1 - j] / fact;
    }
    return poly;
}

double main_term(const nf::NumberFieldSpec& spec, const LaurentExpansion& laurent,
                 int k, double x) {
    return main_term_poly(spec, laurent, k).eval(x);
}

double delta(const nf::NumberFieldSpec& spec, const divisor::DivisorTable& table,
             const LaurentExpansion& laurent, int k, double x) {
    u64 s = divisor::summatory(table, x);
    return (double)s - main_term(spec, laurent, k, x);
}

}  // namespace piltz::mainterm
