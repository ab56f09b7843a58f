#ifndef PILTZ_COMMON_HPP
#define PILTZ_COMMON_HPP

#include <cstdint>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace piltz {

using i64  = long long;
using u64  = unsigned long long;
using i128 = __int128_t;
using u128 = __uint128_t;

// ---------------------------------------------------------------------------
// Error taxonomy.  Each computation-level failure carries the contract name
// it violates; the CLI maps piltz::error -> exit code 2.
// ---------------------------------------------------------------------------
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

#define PILTZ_DEFINE_ERROR(NAME)                                           \
    struct NAME : error {                                                  \
        explicit NAME(const std::string& w) : error(#NAME ": " + w) {}     \
    }

PILTZ_DEFINE_ERROR(ReduciblePolynomial);
PILTZ_DEFINE_ERROR(UnknownDiscriminant);
PILTZ_DEFINE_ERROR(IndexDivisor);
PILTZ_DEFINE_ERROR(IntransitiveGroup);
PILTZ_DEFINE_ERROR(GroupTooLarge);
PILTZ_DEFINE_ERROR(RangeExceeded);
PILTZ_DEFINE_ERROR(InsufficientRange);
PILTZ_DEFINE_ERROR(ExtrapolationUnstable);
PILTZ_DEFINE_ERROR(InsufficientOrder);
PILTZ_DEFINE_ERROR(StepTooCoarse);
PILTZ_DEFINE_ERROR(PoolTooSmall);
PILTZ_DEFINE_ERROR(EmptyResonator);
PILTZ_DEFINE_ERROR(XTooSmall);
PILTZ_DEFINE_ERROR(HypothesisViolated);

#undef PILTZ_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Exact fractions on i64 (group densities, exponent identities).
// Intermediates go through i128; magnitudes here stay far below overflow
// (|G| <= 10^6, mk <= ~50).
// ---------------------------------------------------------------------------
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n, b = d;
        while (b) { i128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw error("Rational: overflow");
        Rational r; r.num = (i64)n; r.den = (i64)d; return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128((i128)num * o.den + (i128)o.num * den, (i128)den * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from_i128((i128)num * o.den - (i128)o.num * den, (i128)den * o.den);
    }
    Rational operator*(const Rational& o) const {
        return from_i128((i128)num * o.num, (i128)den * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw error("Rational: division by zero");
        return from_i128((i128)num * o.den, (i128)den * o.num);
    }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    double to_double() const { return (double)num / (double)den; }
    std::string str() const {
        return den == 1 ? std::to_string(num)
                        : std::to_string(num) + "/" + std::to_string(den);
    }
};

// ---------------------------------------------------------------------------
// Neumaier compensated accumulator: fixed-order sums reproducible to 1 ulp.
// ---------------------------------------------------------------------------
struct CompensatedSum {
    double s = 0.0;
    double c = 0.0;
    void add(double v) {
        double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// Largest integer r >= 0 with r*r <= x.  Exact for x < 2^52 (we stay far below).
inline i64 isqrt_floor(double x) {
    if (x < 0) return -1;
    i64 r = (i64)std::sqrt(x);
    while ((double)(r + 1) * (double)(r + 1) <= x) ++r;
    while (r > 0 && (double)r * (double)r > x) --r;
    return r;
}

inline u64 isqrt_u64(u64 x) {
    u64 r = (u64)std::sqrt((double)x);
    while ((r + 1) * (r + 1) <= x) ++r;
    while (r * r > x) --r;
    return r;
}

// Primes up to n inclusive (simple Eratosthenes; n at desk scale <= ~10^7).
std::vector<i64> primes_up_to(i64 n);

// log log x and log log log x (the iterated logarithms of the asymptotics).
inline double loglog(double x) { return std::log(std::log(x)); }
inline double logloglog(double x) { return std::log(std::log(std::log(x))); }

// ---------------------------------------------------------------------------
// Bounded parallel map over index chunks.  Results must not depend on the
// chunking; callers combine per-chunk values with an order-fixed reducer.
// ---------------------------------------------------------------------------
int max_threads();
void set_max_threads(int n);   // n <= 0 restores the default (serial)

template <typename Fn>
void parallel_chunks(i64 begin, i64 end, Fn&& fn) {
    i64 total = end - begin;
    int nt = max_threads();
    if (nt <= 1 || total < 1024) {
        fn(begin, end);
        return;
    }
    i64 chunk = (total + nt - 1) / nt;
    std::vector<std::future<void>> futs;
    for (i64 lo = begin; lo < end; lo += chunk) {
        i64 hi = std::min(end, lo + chunk);
        futs.push_back(std::async(std::launch::async, [&fn, lo, hi] { fn(lo, hi); }));
    }
    for (auto& f : futs) f.get();
}

// Shortest-round-trip double formatting shared by all JSON/CSV emitters.
std::string fmt_double(double v);

}  // namespace piltz

#endif
