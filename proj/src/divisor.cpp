#include "piltz/divisor.hpp"

#include <cstdio>
#include <cstring>

namespace piltz::divisor {

static u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error("divisor value overflows 64 bits");
    return r;
}

std::vector<u64> local_factor(const nf::NumberFieldSpec& spec, i64 p, int k,
                              int max_power) {
    nf::SplittingType st = nf::splitting_type(spec, p);
    std::vector<u64> coeffs(max_power + 1, 0);
    coeffs[0] = 1;
    // multiply the running series by (1 - T^f)^{-k} = sum_j C(j+k-1, k-1) T^{jf}
    for (auto& [f, e] : st.factors) {
        (void)e;  // ramification does not enter the Euler factor
        std::vector<u64> next(max_power + 1, 0);
        u64 binom = 1;  // C(j+k-1, k-1)
        for (int j = 0; j * f <= max_power; ++j) {
            if (j > 0) binom = checked_mul(binom, (u64)(j + k - 1)) / (u64)j;
            for (int i = 0; i + j * f <= max_power; ++i)
                if (coeffs[i]) {
                    u64 add = checked_mul(coeffs[i], binom);
                    if (__builtin_add_overflow(next[i + j * f], add, &next[i + j * f]))
                        throw error("divisor value overflows 64 bits");
                }
        }
        coeffs.swap(next);
    }
    return coeffs;
}

DivisorTable sieve_divisors(const nf::NumberFieldSpec& spec, int k, i64 N) {
    if (N < 1) throw error("sieve_divisors: N must be >= 1");
    if (N > (i64)UINT32_MAX) throw error("sieve_divisors: N exceeds 2^32-1");

    DivisorTable t;
    t.field_label = spec.label;
    t.k = k;
    t.N = N;
    t.values.assign((size_t)N + 1, 0);
    t.values[0] = 0;
    if (N >= 1) t.values[1] = 1;
    for (i64 p : spec.index_sq_divisors)
        if (p <= N) t.unresolved_primes.push_back(p);

    // linear sieve; spf_pow[n] is the spf(n)-power part of n
    std::vector<uint32_t> spf_pow((size_t)N + 1, 0);
    std::vector<uint32_t> primes;
    for (i64 i = 2; i <= N; ++i) {
        if (spf_pow[i] == 0) {
            primes.push_back((uint32_t)i);
            spf_pow[i] = (uint32_t)i;
            t.values[i] = local_factor(spec, i, k, 1)[1];
        }
        for (uint32_t p : primes) {
            if ((i64)p * i > N) break;
            i64 c = (i64)p * i;
            if (i % p == 0) {
                spf_pow[c] = spf_pow[i] * p;
                if ((i64)spf_pow[c] == c) {
                    int a = 0;
                    for (i64 tmp = c; tmp % p == 0; tmp /= p) ++a;
                    t.values[c] = local_factor(spec, p, k, a)[a];
                } else {
                    t.values[c] =
                        checked_mul(t.values[c / spf_pow[c]], t.values[spf_pow[c]]);
                }
                break;
            }
            spf_pow[c] = p;
            t.values[c] = checked_mul(t.values[i], t.values[p]);
        }
    }
    return t;
}

u64 summatory(const DivisorTable& table, double x) {
    if (x > (double)table.N)
        throw RangeExceeded("summatory at x=" + std::to_string(x) + " > N=" +
                            std::to_string(table.N));
    if (x < 1) return 0;
    i64 nx = (i64)x;
    u64 s = 0;
    for (i64 n = 1; n <= nx; ++n) s += table.values[n];
    return s;
}

PrefixSums::PrefixSums(const DivisorTable& table) : N(table.N) {
    cumulative.resize((size_t)N + 1);
    cumulative[0] = 0;
    for (i64 n = 1; n <= N; ++n) cumulative[n] = cumulative[n - 1] + table.values[n];
}

u64 PrefixSums::query(double x) const {
    if (x > (double)N)
        throw RangeExceeded("prefix query at x=" + std::to_string(x));
    if (x < 1) return 0;
    return cumulative[(size_t)x];
}

u64 oracle_lattice_count(double x) {
    if (x < 0) return 0;
    i64 r = isqrt_floor(x);
    u64 total = 0;
    for (i64 a = -r; a <= r; ++a) {
        double rem = x - (double)a * (double)a;
        i64 b = isqrt_floor(rem);
        total += (u64)(2 * b + 1);
    }
    return total;
}

u64 oracle_divisor(u64 n) {
    if (n == 0) throw error("oracle_divisor: n must be >= 1");
    u64 count = 0;
    for (u64 d = 1; d * d <= n; ++d)
        if (n % d == 0) count += (d * d == n) ? 1 : 2;
    return count;
}

// ---------------------------------------------------------------------------
// Disk cache
// ---------------------------------------------------------------------------

static constexpr char kMagic[8] = {'P', 'I', 'L', 'T', 'Z', 'D', 'T', '1'};

void save_table(const std::string& path, const DivisorTable& table) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw error("cannot open cache file for writing: " + path);
    auto put = [&](const void* p, size_t n) {
        if (std::fwrite(p, 1, n, f) != n) {
            std::fclose(f);
            throw error("short write to cache file: " + path);
        }
    };
    put(kMagic, 8);
    uint32_t k32 = (uint32_t)table.k;
    put(&k32, 4);
    u64 n64 = (u64)table.N;
    put(&n64, 8);
    uint32_t ll = (uint32_t)table.field_label.size();
    put(&ll, 4);
    put(table.field_label.data(), ll);
    uint32_t uc = (uint32_t)table.unresolved_primes.size();
    put(&uc, 4);
    for (i64 p : table.unresolved_primes) {
        u64 p64 = (u64)p;
        put(&p64, 8);
    }
    put(table.values.data() + 1, sizeof(u64) * (size_t)table.N);
    std::fclose(f);
}

DivisorTable load_table(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw error("cannot open cache file: " + path);
    auto get = [&](void* p, size_t n) {
        if (std::fread(p, 1, n, f) != n) {
            std::fclose(f);
            throw error("short read from cache file: " + path);
        }
    };
    char magic[8];
    get(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) {
        std::fclose(f);
        throw error("not a divisor-table cache: " + path);
    }
    DivisorTable t;
    uint32_t k32;
    get(&k32, 4);
    t.k = (int)k32;
    u64 n64;
    get(&n64, 8);
    t.N = (i64)n64;
    uint32_t ll;
    get(&ll, 4);
    t.field_label.resize(ll);
    if (ll) get(t.field_label.data(), ll);
    uint32_t uc;
    get(&uc, 4);
    for (uint32_t i = 0; i < uc; ++i) {
        u64 p64;
        get(&p64, 8);
        t.unresolved_primes.push_back((i64)p64);
    }
    t.values.assign((size_t)t.N + 1, 0);
    get(t.values.data() + 1, sizeof(u64) * (size_t)t.N);
    std::fclose(f);
    return t;
}

}  // namespace piltz::divisor
