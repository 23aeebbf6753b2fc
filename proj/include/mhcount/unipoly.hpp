#ifndef MHCOUNT_UNIPOLY_HPP
#define MHCOUNT_UNIPOLY_HPP

#include <vector>

#include "mhcount/field.hpp"

namespace mhcount {

/// Dense univariate polynomial over F_q: coefficients ascending, no trailing
/// zeros (the zero polynomial is the empty vector).  Degrees stay small
/// (at most mk), so dense storage is the right tradeoff.
using Poly = std::vector<Elt>;

inline int poly_degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_trim(Poly f);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
/// Remainder of a by b; throws Error when b is the zero polynomial.
Poly poly_mod(const Field& F, Poly a, const Poly& b);
/// Scales by the inverse of the leading coefficient.
Poly poly_monic(const Field& F, Poly f);
/// Euclidean gcd, normalized monic at each step; gcd(0,0) = 0.
Poly poly_gcd(const Field& F, Poly a, Poly b);
Elt poly_eval(const Field& F, const Poly& f, Elt x);

/// X^q mod f by square-and-multiply on q, every product reduced mod f.
/// Requires deg f >= 1.
Poly frobenius_power(const Field& F, const Poly& f);

/// #{x in F_q : f(x) = 0} = deg gcd(f, X^q - X); constants have no roots.
/// Throws Error on the zero polynomial.
int distinct_root_count(const Field& F, const Poly& f);

}  // namespace mhcount

#endif
