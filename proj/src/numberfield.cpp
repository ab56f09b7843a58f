#include "piltz/numberfield.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "piltz/poly.hpp"

namespace piltz::nf {

std::vector<int> DensityVector::support() const {
    std::vector<int> out;
    for (int nu = 1; nu <= m; ++nu)
        if (deltas[nu] > 0) out.push_back(nu);
    return out;
}

// ---------------------------------------------------------------------------
// Irreducibility certification: rational-root test, then irreducibility of
// f mod p for a small prime, then a Kronecker factor search for degree <= 6.
// ---------------------------------------------------------------------------

static i128 eval_at(const std::vector<i64>& f, i64 x) {
    i128 v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    return v;
}

static bool has_rational_root(const std::vector<i64>& f) {
    i64 c0 = f[0];
    if (c0 == 0) return true;  // x divides f
    i64 a = c0 < 0 ? -c0 : c0;
    for (i64 d = 1; d * d <= a; ++d) {
        if (a % d != 0) continue;
        for (i64 r : {d, -d, a / d, -(a / d)})
            if (eval_at(f, r) == 0) return true;
    }
    return false;
}

static std::vector<i64> divisors_signed(i64 v) {
    i64 a = v < 0 ? -v : v;
    std::vector<i64> out;
    for (i64 d = 1; d * d <= a; ++d)
        if (a % d == 0) {
            out.push_back(d);
            if (d != a / d) out.push_back(a / d);
        }
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back(-out[i]);
    std::sort(out.begin(), out.end());
    return out;
}

// exact division test over Z for monic divisor g
static bool divides_exactly(const std::vector<i64>& f, const std::vector<i64>& g) {
    std::vector<i128> r(f.begin(), f.end());
    int dg = (int)g.size() - 1;
    while ((int)r.size() >= (int)g.size()) {
        i128 c = r.back();
        size_t shift = r.size() - g.size();
        for (int i = 0; i <= dg; ++i) r[shift + i] -= c * g[i];
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return r.empty();
}

// Kronecker search for a monic integer factor of degree exactly d
static bool has_factor_of_degree(const std::vector<i64>& f, int d) {
    std::vector<i64> xs;
    for (i64 x = 0; (int)xs.size() < d + 1; x = x > 0 ? -x : -x + 1) xs.push_back(x);
    std::vector<i64> vals;
    for (i64 x : xs) {
        i128 v = eval_at(f, x);
        if (v == 0) return true;  // rational root
        if (v > INT64_MAX || v < INT64_MIN) throw error("factor search overflow");
        vals.push_back((i64)v);
    }
    std::vector<std::vector<i64>> choices;
    for (i64 v : vals) choices.push_back(divisors_signed(v));

    std::vector<size_t> idx(d + 1, 0);
    std::vector<double> y(d + 1);
    while (true) {
        for (int i = 0; i <= d; ++i) y[i] = (double)choices[i][idx[i]];
        // Newton interpolation with exact rational checks via doubles is
        // fragile; build the candidate with exact arithmetic instead.
        // Lagrange on d+1 small integer nodes: coefficients are rationals
        // with denominator dividing prod(x_i - x_j); accept only integer,
        // monic +-1 leading results.
        {
            // divided differences over rationals in i128/i64 (nodes are tiny)
            std::vector<Rational> dd(d + 1);
            for (int i = 0; i <= d; ++i) dd[i] = Rational(choices[i][idx[i]]);
            std::vector<Rational> coef(dd);
            for (int level = 1; level <= d; ++level)
                for (int i = d; i >= level; --i)
                    coef[i] = (coef[i] - coef[i - 1]) / Rational(xs[i] - xs[i - level]);
            // expand Newton form to monomial coefficients
            std::vector<Rational> poly{coef[d]};
            for (int i = d - 1; i >= 0; --i) {
                poly.insert(poly.begin(), Rational(0));
                for (size_t j = 0; j + 1 < poly.size(); ++j)
                    poly[j] = poly[j] - Rational(xs[i]) * poly[j + 1];
                poly[0] = poly[0] + coef[i];
            }
            bool integer = true;
            for (auto& c : poly)
                if (c.den != 1) { integer = false; break; }
            if (integer && poly.size() == (size_t)d + 1 &&
                (poly[d].num == 1 || poly[d].num == -1)) {
                std::vector<i64> g(d + 1);
                for (int i = 0; i <= d; ++i) g[i] = poly[d].num == 1 ? poly[i].num : -poly[i].num;
                if (divides_exactly(f, g)) return true;
            }
        }
        int pos = 0;
        while (pos <= d && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
        if (pos > d) break;
    }
    return false;
}

static void certify_irreducible(const std::vector<i64>& f) {
    int m = (int)f.size() - 1;
    if (m == 1) return;
    if (has_rational_root(f))
        throw ReduciblePolynomial("defining polynomial has a rational root");
    if (m <= 3) return;  // no linear factor => irreducible for degree <= 3
    for (i64 p : primes_up_to(200)) {
        fp::Poly fb = fp::reduce(f, p);
        if (fp::deg(fb) != m) continue;
        if (fp::is_irreducible(fb, p)) return;
    }
    if (m > 6)
        throw error("cannot certify irreducibility (degree > 6, no mod-p witness)");
    for (int d = 2; d <= m / 2; ++d)
        if (has_factor_of_degree(f, d))
            throw ReduciblePolynomial("factor of degree " + std::to_string(d) + " found");
}

NumberFieldSpec parse_field(const std::vector<i64>& coeffs,
                            std::optional<i64> D_override,
                            const std::string& label) {
    std::vector<i64> f = coeffs;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2) throw error("parse_field: degree must be >= 1");
    if (f.back() != 1) throw error("parse_field: polynomial must be monic");

    certify_irreducible(f);

    NumberFieldSpec spec;
    spec.coeffs = f;
    spec.m = (int)f.size() - 1;
    spec.r1 = zp::count_real_roots(f);
    if ((spec.m - spec.r1) % 2 != 0)
        throw error("parse_field: real-root count inconsistent with degree");
    spec.r2 = (spec.m - spec.r1) / 2;
    spec.disc_f = spec.m == 1 ? 1 : zp::discriminant(f);
    spec.label = label.empty() ? "field" : label;

    i64 absdisc = spec.disc_f < 0 ? -spec.disc_f : spec.disc_f;
    // primes with p^2 | disc_f
    std::vector<i64> sq_primes;
    {
        i64 n = absdisc;
        for (i64 p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            if (e >= 2) sq_primes.push_back(p);
        }
    }
    std::vector<i64> failing;
    for (i64 p : sq_primes)
        if (!zp::dedekind_p_maximal(f, p)) failing.push_back(p);

    if (failing.empty()) {
        spec.D = absdisc;
    } else if (D_override) {
        i64 ov = *D_override;
        if (ov <= 0 || absdisc % ov != 0)
            throw error("parse_field: D override does not divide |disc_f|");
        i64 q = absdisc / ov;
        i64 r = (i64)isqrt_u64((u64)q);
        if (r * r != q)
            throw error("parse_field: |disc_f|/D is not a perfect square");
        spec.D = ov;
        spec.index_sq_divisors = failing;
    } else {
        std::string ps;
        for (i64 p : failing) ps += (ps.empty() ? "" : ",") + std::to_string(p);
        throw UnknownDiscriminant("order not certified maximal at p in {" + ps +
                                  "}; supply D explicitly");
    }
    return spec;
}

std::vector<std::pair<std::vector<i64>, int>>
factor_mod_p(const std::vector<i64>& coeffs, i64 p) {
    auto factors = fp::factor(coeffs, p);
    std::vector<std::pair<std::vector<i64>, int>> out;
    out.reserve(factors.size());
    for (auto& [g, e] : factors) out.emplace_back(g, e);
    return out;
}

SplittingType splitting_type(const NumberFieldSpec& spec, i64 p) {
    SplittingType st;
    st.p = p;
    bool index_prime = std::find(spec.index_sq_divisors.begin(),
                                 spec.index_sq_divisors.end(),
                                 p) != spec.index_sq_divisors.end();
    if (index_prime) {
        auto it = spec.local_overrides.find(p);
        if (it == spec.local_overrides.end())
            throw IndexDivisor("p=" + std::to_string(p) +
                               " may divide the index; splitting type unknown");
        st.factors = it->second;
    } else {
        for (auto& [g, e] : fp::factor(spec.coeffs, p))
            st.factors.emplace_back((int)g.size() - 1, e);
    }
    int check = 0;
    for (auto& [fi, ei] : st.factors) {
        check += fi * ei;
        if (fi == 1 && ei == 1) ++st.nu;
        if (ei > 1) st.ramified = true;
    }
    if (check != spec.m)
        throw error("splitting_type: sum e_i f_i != degree");
    return st;
}

// ---------------------------------------------------------------------------
// Exact densities by enumerating the permutation group and counting fixed
// points of each element on {1..m}.
// ---------------------------------------------------------------------------

DensityVector densities_from_group(const std::vector<std::vector<int>>& generators) {
    if (generators.empty()) throw error("densities_from_group: no generators");
    size_t m = generators[0].size();
    std::vector<std::vector<int>> gens;
    for (auto& g : generators) {
        if (g.size() != m) throw error("generator length mismatch");
        std::vector<int> z(m);
        std::vector<char> seen(m, 0);
        for (size_t i = 0; i < m; ++i) {
            int v = g[i] - 1;  // one-line notation is 1-based
            if (v < 0 || v >= (int)m || seen[v])
                throw error("generator is not a permutation");
            seen[v] = 1;
            z[i] = v;
        }
        gens.push_back(z);
    }

    constexpr size_t kGroupCap = 1000000;
    std::set<std::vector<int>> group;
    std::vector<int> id(m);
    for (size_t i = 0; i < m; ++i) id[i] = (int)i;
    group.insert(id);
    std::vector<std::vector<int>> frontier = {id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& g : frontier)
            for (auto& h : gens) {
                std::vector<int> c(m);
                for (size_t i = 0; i < m; ++i) c[i] = g[h[i]];
                if (group.insert(c).second) {
                    if (group.size() > kGroupCap)
                        throw GroupTooLarge("generated group exceeds 10^6 elements");
                    next.push_back(std::move(c));
                }
            }
        frontier = std::move(next);
    }

    // transitivity on {1..m}: orbit of point 0
    {
        std::vector<char> orbit(m, 0);
        orbit[0] = 1;
        std::vector<int> stack = {0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& h : gens)
                if (!orbit[h[v]]) { orbit[h[v]] = 1; stack.push_back(h[v]); }
        }
        for (size_t i = 0; i < m; ++i)
            if (!orbit[i]) throw IntransitiveGroup("group is not transitive");
    }

    std::vector<i64> count(m + 1, 0);
    for (auto& g : group) {
        int fixed = 0;
        for (size_t i = 0; i < m; ++i)
            if (g[i] == (int)i) ++fixed;
        ++count[fixed];
    }

    DensityVector dv;
    dv.m = (int)m;
    dv.source = DensitySource::exact_group;
    dv.deltas.resize(m + 1);
    dv.deltas_exact.resize(m + 1);
    for (size_t nu = 0; nu <= m; ++nu) {
        dv.deltas_exact[nu] = Rational(count[nu], (i64)group.size());
        dv.deltas[nu] = dv.deltas_exact[nu].to_double();
        if (nu >= 1 && count[nu] > 0) ++dv.R;
    }
    return dv;
}

DensityVector estimate_densities(const NumberFieldSpec& spec, i64 prime_bound) {
    if (prime_bound < 100) throw error("estimate_densities: bound must be >= 100");
    auto primes = primes_up_to(prime_bound);

    int m = spec.m;
    // integer tallies: results independent of how the range is chunked
    std::vector<i64> count(m + 1, 0);
    i64 analyzed = 0;
    std::mutex merge_mtx;
    parallel_chunks(0, (i64)primes.size(), [&](i64 lo, i64 hi) {
        std::vector<i64> local(m + 1, 0);
        i64 local_analyzed = 0;
        for (i64 i = lo; i < hi; ++i) {
            i64 p = primes[i];
            if (std::find(spec.index_sq_divisors.begin(),
                          spec.index_sq_divisors.end(),
                          p) != spec.index_sq_divisors.end())
                continue;  // excluded from both counts
            SplittingType st = splitting_type(spec, p);
            if (st.ramified) continue;
            ++local_analyzed;
            ++local[st.nu];
        }
        std::lock_guard<std::mutex> lock(merge_mtx);
        analyzed += local_analyzed;
        for (int nu = 0; nu <= m; ++nu) count[nu] += local[nu];
    });

    DensityVector dv;
    dv.m = m;
    dv.source = DensitySource::empirical;
    dv.analyzed_primes = analyzed;
    dv.deltas.resize(m + 1, 0.0);
    for (int nu = 0; nu <= m; ++nu) {
        dv.deltas[nu] = analyzed > 0 ? (double)count[nu] / (double)analyzed : 0.0;
        if (nu >= 1 && count[nu] > 0) ++dv.R;
    }
    return dv;
}

NumberFieldSpec field_rationals() { return parse_field({-1, 1}, std::nullopt, "Q"); }
NumberFieldSpec field_gaussian() { return parse_field({1, 0, 1}, std::nullopt, "Q(i)"); }
NumberFieldSpec field_cubic23() { return parse_field({-1, -1, 0, 1}, std::nullopt, "Q[x]/(x^3-x-1)"); }

}  // namespace piltz::nf
