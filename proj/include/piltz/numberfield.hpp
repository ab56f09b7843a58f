#ifndef PILTZ_NUMBERFIELD_HPP
#define PILTZ_NUMBERFIELD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piltz/common.hpp"

namespace piltz::nf {

// A number field K = Q[x]/(f), f monic irreducible.  Splitting data for a
// rational prime p is read off the factorization of f mod p (Dedekind), valid
// whenever p does not divide the index [O_K : Z[xi]]; the finitely many
// suspect primes are listed in index_sq_divisors.
struct NumberFieldSpec {
    std::vector<i64> coeffs;   // ascending, monic
    int m = 0;                 // degree = r1 + 2*r2
    int r1 = 0;
    int r2 = 0;
    i64 disc_f = 0;            // polynomial discriminant
    i64 D = 1;                 // absolute field discriminant
    std::vector<i64> index_sq_divisors;
    std::string label;
    // user-supplied splitting data (f_i, e_i) for index-divisor primes
    std::map<i64, std::vector<std::pair<int, int>>> local_overrides;
};

struct SplittingType {
    i64 p = 0;
    std::vector<std::pair<int, int>> factors;  // (residue degree f_i, ramification e_i)
    int nu = 0;                                // # of (f_i = 1, e_i = 1) pairs
    bool ramified = false;
};

enum class DensitySource { exact_group, empirical, user_supplied };

struct DensityVector {
    int m = 0;
    std::vector<double> deltas;           // index nu = 0..m
    std::vector<Rational> deltas_exact;   // populated when source == exact_group
    DensitySource source = DensitySource::empirical;
    int R = 0;                            // |{nu >= 1 : delta_nu > 0}|
    i64 analyzed_primes = 0;              // empirical only

    std::vector<int> support() const;     // nu >= 1 with delta_nu > 0
};

NumberFieldSpec parse_field(const std::vector<i64>& coeffs,
                            std::optional<i64> D_override = std::nullopt,
                            const std::string& label = "");

// Monic irreducible factors of f mod p with multiplicities, sorted by degree
// then lexicographic coefficients.  Factors are coefficient vectors mod p.
std::vector<std::pair<std::vector<i64>, int>>
factor_mod_p(const std::vector<i64>& coeffs, i64 p);

SplittingType splitting_type(const NumberFieldSpec& spec, i64 p);

// Exact Dirichlet densities from a transitive permutation group given by
// generators in one-line notation (1-based images of 1..m):
// delta_nu = #{sigma : sigma fixes exactly nu points} / |G|.
DensityVector densities_from_group(const std::vector<std::vector<int>>& generators);

DensityVector estimate_densities(const NumberFieldSpec& spec, i64 prime_bound);

// The fields every verification run needs.
NumberFieldSpec field_rationals();   // x - 1
NumberFieldSpec field_gaussian();    // x^2 + 1
NumberFieldSpec field_cubic23();     // x^3 - x - 1

}  // namespace piltz::nf

#endif
