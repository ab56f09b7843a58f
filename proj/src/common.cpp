#include "piltz/common.hpp"

#include <atomic>
#include <cstdio>

namespace piltz {

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<uint8_t> comp(n + 1, 0);
    for (i64 i = 2; i * i <= n; ++i)
        if (!comp[i])
            for (i64 j = i * i; j <= n; j += i) comp[j] = 1;
    for (i64 i = 2; i <= n; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

static std::atomic<int> g_max_threads{1};

int max_threads() { return g_max_threads.load(); }

void set_max_threads(int n) {
    if (n <= 0) n = 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && (unsigned)n > hw) n = (int)hw;
    g_max_threads.store(n);
}

std::string fmt_double(double v) {
    // 17 significant digits round-trips any double; trim the exponent noise
    // that %.17g leaves on exact values by retrying shorter widths first.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = std::strtod(buf, nullptr);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace piltz
