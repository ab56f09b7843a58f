#ifndef PILTZ_DIVISOR_HPP
#define PILTZ_DIVISOR_HPP

#include <string>
#include <vector>

#include "piltz/numberfield.hpp"

namespace piltz::divisor {

// d_K^(k)(n) for n = 1..N: the number of k-tuples of nonzero integral ideals
// whose norm product is n, i.e. the coefficients of zeta_K^k.
struct DivisorTable {
    std::string field_label;
    int k = 1;
    i64 N = 0;
    std::vector<u64> values;          // index 1..N; values[0] unused
    std::vector<i64> unresolved_primes;  // index primes covered by overrides

    u64 at(i64 n) const { return values[(size_t)n]; }
};

// Coefficients a_j, j = 0..max_power, of prod_i (1 - T^{f_i})^{-k} where the
// f_i are the residue degrees above p; a_j = d_K^(k)(p^j).
std::vector<u64> local_factor(const nf::NumberFieldSpec& spec, i64 p, int k,
                              int max_power);

DivisorTable sieve_divisors(const nf::NumberFieldSpec& spec, int k, i64 N);

// Exact sum_{n <= floor(x)} values[n]; throws RangeExceeded when x > N.
u64 summatory(const DivisorTable& table, double x);

// O(1) summatory queries for the quadrature/grid loops.
struct PrefixSums {
    i64 N = 0;
    std::vector<u64> cumulative;  // cumulative[n] = sum_{j<=n} values[j]

    explicit PrefixSums(const DivisorTable& table);
    u64 query(double x) const;
};

// Independent oracles (enumeration and trial division; no sieve machinery).
u64 oracle_lattice_count(double x);   // #{(a,b) in Z^2 : a^2 + b^2 <= x}
u64 oracle_divisor(u64 n);            // number of divisors by trial division

// Binary cache: little-endian layout
//   8 bytes  magic "PILTZDT1"
//   u32      k
//   u64      N
//   u32      label length L, then L raw bytes
//   u32      number of unresolved primes U, then U x u64
//   N x u64  values for n = 1..N
void save_table(const std::string& path, const DivisorTable& table);
DivisorTable load_table(const std::string& path);

}  // namespace piltz::divisor

#endif
