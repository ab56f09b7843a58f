#ifndef PILTZ_POLY_HPP
#define PILTZ_POLY_HPP

#include <utility>
#include <vector>

#include "piltz/common.hpp"

// Integer and F_p polynomial arithmetic at the sizes number-field setup
// needs: degree <= ~8, exact resultants/discriminants, Sturm real-root
// counts, and full factorization mod p (squarefree split + distinct-degree
// + Cantor-Zassenhaus equal-degree with a deterministic RNG).

namespace piltz::fp {

// Coefficients ascending (c[j] is the x^j coefficient), reduced into [0,p),
// no trailing zeros.  The zero polynomial is the empty vector.
using Poly = std::vector<i64>;

Poly reduce(const std::vector<i64>& coeffs, i64 p);
Poly mul(const Poly& a, const Poly& b, i64 p);
Poly mod(const Poly& a, const Poly& divisor, i64 p);
Poly gcd(Poly a, Poly b, i64 p);          // monic normalized
Poly derivative(const Poly& a, i64 p);
Poly make_monic(const Poly& a, i64 p);
inline int deg(const Poly& a) { return (int)a.size() - 1; }

// (factor, multiplicity) pairs, factors monic irreducible, sorted by degree
// then lexicographic coefficient order.  Product reproduces f mod p.
std::vector<std::pair<Poly, int>> factor(const std::vector<i64>& coeffs, i64 p);

bool is_irreducible(const Poly& f, i64 p);

}  // namespace piltz::fp

namespace piltz::zp {

// Resultant of two integer polynomials (coefficients ascending).  Exact via
// fraction-free elimination on the Sylvester matrix; throws piltz::error on
// i64 overflow of the final value (intermediates are arbitrary precision).
i64 resultant(const std::vector<i64>& a, const std::vector<i64>& b);

// disc(f) = (-1)^{m(m-1)/2} Res(f, f') for monic f of degree m.
i64 discriminant(const std::vector<i64>& f);

// Number of distinct real roots, by a Sturm chain over exact rationals.
int count_real_roots(const std::vector<i64>& f);

// Dedekind's criterion: true iff p does not divide the index [O_K : Z[xi]]
// for the order generated by a root of monic f.
bool dedekind_p_maximal(const std::vector<i64>& f, i64 p);

}  // namespace piltz::zp

#endif
