#include "piltz/poly.hpp"

#include <algorithm>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

namespace mp = boost::multiprecision;
using mp::cpp_int;
using mp::cpp_rational;

namespace piltz::fp {

static inline i64 norm_mod(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

static inline i64 mulmod(i64 a, i64 b, i64 p) { return (i64)((i128)a * b % p); }

static i64 powmod_i(i64 a, i64 e, i64 p) {
    i64 r = 1 % p;
    a = norm_mod(a, p);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

static inline i64 invmod(i64 a, i64 p) { return powmod_i(a, p - 2, p); }

static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce(const std::vector<i64>& coeffs, i64 p) {
    Poly r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) r[i] = norm_mod(coeffs[i], p);
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (i128)a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

Poly make_monic(const Poly& a, i64 p) {
    if (a.empty()) return a;
    Poly r = a;
    if (r.back() != 1) {
        i64 inv = invmod(r.back(), p);
        for (auto& c : r) c = mulmod(c, inv, p);
    }
    return r;
}

Poly mod(const Poly& a, const Poly& divisor, i64 p) {
    if (divisor.empty()) throw error("fp::mod: division by zero polynomial");
    Poly d = make_monic(divisor, p);
    Poly r = a;
    while ((int)r.size() >= (int)d.size()) {
        i64 c = r.back();
        size_t shift = r.size() - d.size();
        if (c != 0)
            for (size_t i = 0; i < d.size(); ++i) {
                r[shift + i] = (r[shift + i] - mulmod(c, d[i], p)) % p;
                if (r[shift + i] < 0) r[shift + i] += p;
            }
        r.pop_back();
        trim(r);
    }
    return r;
}

Poly gcd(Poly a, Poly b, i64 p) {
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

Poly derivative(const Poly& a, i64 p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], (i64)(i % p), p);
    trim(r);
    return r;
}

static Poly sub(const Poly& a, const Poly& b, i64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] + p) % p;
    trim(r);
    return r;
}

static Poly divexact(const Poly& a, const Poly& b, i64 p) {
    // quotient of an exact division (used by the squarefree split)
    Poly d = make_monic(b, p);
    Poly r = a, q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, 0);
    while ((int)r.size() >= (int)d.size()) {
        i64 c = r.back();
        size_t shift = r.size() - d.size();
        q[shift] = c;
        if (c != 0)
            for (size_t i = 0; i < d.size(); ++i) {
                r[shift + i] = (r[shift + i] - mulmod(c, d[i], p)) % p;
                if (r[shift + i] < 0) r[shift + i] += p;
            }
        r.pop_back();
        trim(r);
    }
    if (!r.empty()) throw error("fp::divexact: division was not exact");
    trim(q);
    return q;
}

static Poly powmod_poly(Poly base, cpp_int e, const Poly& f, i64 p) {
    Poly r = {1};
    base = mod(base, f, p);
    while (e > 0) {
        if ((e & 1) != 0) r = mod(mul(r, base, p), f, p);
        base = mod(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// x^(p^d) mod f via d successive p-th powers
static Poly frobenius_power(const Poly& f, i64 p, int d, Poly start) {
    Poly h = std::move(start);
    for (int i = 0; i < d; ++i) h = powmod_poly(h, cpp_int(p), f, p);
    return h;
}

// squarefree decomposition in characteristic p
static void squarefree_split(const Poly& f, i64 p, int mult_scale,
                             std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly fp = derivative(f, p);
    if (fp.empty()) {
        // f = h(x)^p: coefficients live at indices divisible by p
        Poly h((deg(f) / (size_t)p) + 1, 0);
        for (size_t i = 0; i < f.size(); i += (size_t)p) h[i / p] = f[i];
        squarefree_split(h, p, mult_scale * (int)p, out);
        return;
    }
    Poly g = gcd(f, fp, p);
    Poly w = divexact(f, g, p);
    int i = 1;
    while (deg(w) > 0) {
        Poly y = gcd(w, g, p);
        Poly z = divexact(w, y, p);
        if (deg(z) > 0) out.emplace_back(make_monic(z, p), i * mult_scale);
        w = std::move(y);
        g = divexact(g, w, p);
        ++i;
    }
    if (deg(g) > 0) {
        Poly h((deg(g) / (size_t)p) + 1, 0);
        for (size_t j = 0; j < g.size(); j += (size_t)p) h[j / p] = g[j];
        squarefree_split(h, p, mult_scale * (int)p, out);
    }
}

// distinct-degree split of squarefree monic f: (product_of_deg_d_factors, d)
static std::vector<std::pair<Poly, int>> distinct_degree(Poly f, i64 p) {
    std::vector<std::pair<Poly, int>> out;
    Poly h = {0, 1};  // x
    int d = 0;
    while (2 * (d + 1) <= deg(f)) {
        ++d;
        h = frobenius_power(f, p, 1, h);
        Poly hx = sub(h, Poly{0, 1}, p);
        Poly g = gcd(hx, f, p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divexact(f, g, p);
            h = mod(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

static u64 splitmix64(u64& state) {
    u64 z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Cantor-Zassenhaus equal-degree split: f = product of irreducibles of
// degree d.  Deterministically seeded from (p, f) so output is reproducible.
static void equal_degree(const Poly& f, int d, i64 p,
                         std::vector<Poly>& out, u64& rng) {
    if (deg(f) == d) {
        out.push_back(make_monic(f, p));
        return;
    }
    int n = deg(f);
    Poly factor_found;
    while (factor_found.empty()) {
        Poly a(n);
        for (int i = 0; i < n; ++i) a[i] = (i64)(splitmix64(rng) % (u64)p);
        trim(a);
        if (deg(a) < 1) continue;
        Poly g = gcd(a, f, p);
        if (deg(g) > 0 && deg(g) < n) { factor_found = g; break; }
        if (p == 2) {
            // trace map: a + a^2 + a^4 + ... + a^(2^(d-1))
            Poly t = a, cur = a;
            for (int i = 1; i < d; ++i) {
                cur = mod(mul(cur, cur, p), f, p);
                Poly s(std::max(t.size(), cur.size()), 0);
                for (size_t j = 0; j < t.size(); ++j) s[j] = t[j];
                for (size_t j = 0; j < cur.size(); ++j) s[j] = (s[j] + cur[j]) % p;
                trim(s);
                t = std::move(s);
            }
            g = gcd(t, f, p);
        } else {
            cpp_int e = (mp::pow(cpp_int(p), d) - 1) / 2;
            Poly b = powmod_poly(a, e, f, p);
            b = sub(b, Poly{1}, p);
            g = gcd(b, f, p);
        }
        if (deg(g) > 0 && deg(g) < n) factor_found = g;
    }
    equal_degree(factor_found, d, p, out, rng);
    equal_degree(divexact(f, factor_found, p), d, p, out, rng);
}

std::vector<std::pair<Poly, int>> factor(const std::vector<i64>& coeffs, i64 p) {
    Poly f = reduce(coeffs, p);
    if (f.empty()) throw error("fp::factor: polynomial is zero mod p");
    f = make_monic(f, p);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_split(f, p, 1, sqf);

    u64 rng = 0x5D1F2B3A9C8E7001ULL ^ (u64)p;
    for (i64 c : coeffs) rng = rng * 0x100000001B3ULL ^ (u64)c;

    std::vector<std::pair<Poly, int>> factors;
    for (auto& [part, mult] : sqf) {
        for (auto& [prod, d] : distinct_degree(part, p)) {
            std::vector<Poly> irr;
            equal_degree(prod, d, p, irr, rng);
            for (auto& g : irr) factors.emplace_back(g, mult);
        }
    }
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return factors;
}

bool is_irreducible(const Poly& f, i64 p) {
    if (deg(f) < 1) return false;
    if (deg(f) == 1) return true;
    Poly d = derivative(f, p);
    if (d.empty() || deg(gcd(f, d, p)) > 0) return false;
    auto dd = distinct_degree(make_monic(f, p), p);
    return dd.size() == 1 && dd[0].second == deg(f);
}

}  // namespace piltz::fp

namespace piltz::zp {

static std::vector<cpp_int> to_big(const std::vector<i64>& a) {
    std::vector<cpp_int> r(a.begin(), a.end());
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

static cpp_int resultant_big(const std::vector<i64>& pa, const std::vector<i64>& pb) {
    auto a = to_big(pa), b = to_big(pb);
    if (a.empty() || b.empty()) return 0;
    int m = (int)a.size() - 1, n = (int)b.size() - 1;
    if (m == 0) return mp::pow(a[0], n);
    if (n == 0) return mp::pow(b[0], m);
    int size = m + n;
    // Sylvester matrix, rows of a (n copies) then rows of b (m copies)
    std::vector<std::vector<cpp_int>> s(size, std::vector<cpp_int>(size, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    // Bareiss fraction-free elimination
    cpp_int prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (s[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r)
                if (s[r][k] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            std::swap(s[k], s[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j)
                s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]) / prev;
            s[i][k] = 0;
        }
        prev = s[k][k];
    }
    return sign * s[size - 1][size - 1];
}

i64 resultant(const std::vector<i64>& a, const std::vector<i64>& b) {
    cpp_int r = resultant_big(a, b);
    if (r > INT64_MAX || r < INT64_MIN)
        throw error("resultant exceeds 64-bit range");
    return (i64)r;
}

i64 discriminant(const std::vector<i64>& f) {
    auto big = to_big(f);
    int m = (int)big.size() - 1;
    if (m < 1) throw error("discriminant: degree must be >= 1");
    if (m == 1) return 1;
    std::vector<i64> fp(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) fp[i - 1] = f[i] * (i64)i;
    cpp_int res = resultant_big(f, fp);
    // monic leading coefficient, so no lc division
    if ((i64)(m * (m - 1) / 2) % 2 == 1) res = -res;
    if (res > INT64_MAX || res < INT64_MIN)
        throw error("discriminant exceeds 64-bit range");
    return (i64)res;
}

static int sign_of(const cpp_rational& x) {
    if (x > 0) return 1;
    if (x < 0) return -1;
    return 0;
}

int count_real_roots(const std::vector<i64>& f) {
    using QP = std::vector<cpp_rational>;
    auto trimq = [](QP& a) { while (!a.empty() && a.back() == 0) a.pop_back(); };
    QP p0(f.begin(), f.end());
    trimq(p0);
    if (p0.size() <= 1) return 0;
    QP p1(p0.size() - 1);
    for (size_t i = 1; i < p0.size(); ++i) p1[i - 1] = p0[i] * (int)i;
    trimq(p1);

    auto remq = [&](QP a, const QP& b) {
        while (a.size() >= b.size() && !a.empty()) {
            cpp_rational c = a.back() / b.back();
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
            a.pop_back();
            trimq(a);
        }
        return a;
    };

    std::vector<QP> chain = {p0, p1};
    while (!chain.back().empty() && chain.back().size() > 1) {
        QP r = remq(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        trimq(r);
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }

    auto variations = [&](int at_plus_inf) {
        int var = 0, last = 0;
        for (const auto& q : chain) {
            if (q.empty()) continue;
            int s = sign_of(q.back());
            if (!at_plus_inf && (q.size() - 1) % 2 == 1) s = -s;
            if (s == 0) continue;
            if (last != 0 && s != last) ++var;
            last = s;
        }
        return var;
    };
    return variations(0) - variations(1);
}

bool dedekind_p_maximal(const std::vector<i64>& f, i64 p) {
    auto factors = fp::factor(f, p);
    fp::Poly g1 = {1}, h1 = {1};
    for (auto& [g, e] : factors) {
        g1 = fp::mul(g1, g, p);
        for (int i = 1; i < e; ++i) h1 = fp::mul(h1, g, p);
    }
    // monic lifts of g1, h1 with coefficients in [0,p); T = (g*h - f)/p mod p
    i64 p2 = p * p;  // index primes are small; p^2 stays in i64 at desk scale
    std::vector<i64> gh(g1.size() + h1.size() - 1, 0);
    for (size_t i = 0; i < g1.size(); ++i)
        for (size_t j = 0; j < h1.size(); ++j)
            gh[i + j] = (i64)(((i128)gh[i + j] + (i128)g1[i] * h1[j]) % p2);
    std::vector<i64> t(std::max(gh.size(), f.size()), 0);
    for (size_t i = 0; i < t.size(); ++i) {
        i64 v = (i < gh.size() ? gh[i] : 0) - (i < f.size() ? f[i] % p2 : 0);
        v %= p2;
        if (v < 0) v += p2;
        if (v % p != 0) throw error("dedekind: g*h != f mod p (internal)");
        t[i] = (v / p) % p;
    }
    fp::Poly tbar = fp::reduce(t, p);
    fp::Poly d = fp::gcd(fp::gcd(tbar, g1, p), h1, p);
    return fp::deg(d) == 0;
}

}  // namespace piltz::zp
