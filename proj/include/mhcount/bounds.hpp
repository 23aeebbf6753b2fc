#ifndef MHCOUNT_BOUNDS_HPP
#define MHCOUNT_BOUNDS_HPP

#include <optional>
#include <string>

#include "mhcount/bigint.hpp"
#include "mhcount/instance.hpp"

namespace mhcount {

enum class BoundName {
  theorem_4_1,
  prop_4_1_diag,
  pcl_bound,
  infinity_deligne,
  prop_4_5_nstar,
  prop_4_6_existence,
};

const char* bound_name_str(BoundName name);

/// One inequality evaluated in exact integers.  lhs_sq/rhs_sq are the two
/// compared integers (squared error vs floor of the squared bound, under a
/// common scale where the bound has a half-integer exponent); pass is always
/// equivalent to lhs_sq <= rhs_sq.  No floating point enters the decision;
/// the tightness ratio sqrt(lhs_sq/rhs_sq) is display-only.
struct BoundVerdict {
  BoundName name;
  BigInt lhs_sq;
  BigInt rhs_sq;
  bool pass = false;
  std::string tightness;
  bool hypothesis_ok = true;            // false -> bound not claimed here
  std::optional<bool> secondary_pass;   // diagonal: the 2 m^t q^{(t-1)/2} form
};

/// Exact comparison x <= u + v*sqrt(q) for nonnegative integers.
struct SqrtBound {
  BigInt u, v, q;
};
bool leq_bound(const BigInt& x, const SqrtBound& b);
BigInt floor_square(const SqrtBound& b);

/// p_r = q^r + ... + q + 1.
BigInt projective_space_size(const BigInt& q, unsigned r);

/// |N - q^{n-1}| <= 9 (mk)^{max(n-1,4)} q^{n-3/2}.
BoundVerdict verdict_theorem_main(const Instance& inst, std::uint64_t N);
/// |N_i - q^{n-i-1}| <= (m-1)^{n-i} q^{(n-i-2)/2} (1 + sqrt(q)), both sides
/// scaled by q; also checks the implied form |N_i - q^{n-i-1}| <= 2 m^{n-i}
/// q^{(n-i-1)/2} (secondary_pass).
BoundVerdict verdict_diagonal(const Instance& inst, unsigned i, std::uint64_t Ni);
/// |N* - ((q-1)^n - (-1)^n)/q| against the n-dependent right-hand side;
/// requires gcd(m, q-1) = 1 (hypothesis_ok records it).
BoundVerdict verdict_nstar(const Instance& inst, std::uint64_t N_star);
/// |pcl - p_{n-1}| <= (mk-1)(mk-2) q^{n-3/2} + 14 (mk-1)^2 (mk)^2 q^{n-2}.
BoundVerdict verdict_pcl(const Instance& inst, std::uint64_t pcl_count);
/// |V_infinity - p_{n-2}| <= (mk-1)^{n-1} q^{(n-2)/2}, as written.
BoundVerdict verdict_infinity(const Instance& inst, std::uint64_t v_infinity);
/// Same error term against the sharper (m-1)^{n-1} coefficient; informational.
bool infinity_sharper_pass(const Instance& inst, std::uint64_t v_infinity);

/// Main term ((q-1)^n - (-1)^n)/q of the N* estimate; exact integer.
BigInt nstar_main_term(const BigInt& q, unsigned n);

struct ExistenceThreshold {
  unsigned n;
  std::uint64_t m, k;
  BigInt threshold;  // 22^2 (2mk)^{2n-2} for n >= 5; 10^2 (mk)^8 for n = 3, 4
};
ExistenceThreshold existence_threshold(unsigned n, std::uint64_t m, std::uint64_t k);

/// (q > threshold) => N* > 0, encoded as q*[N* = 0] <= threshold so that the
/// lhs <= rhs invariant carries the implication.
BoundVerdict verdict_existence(const Instance& inst, std::uint64_t N_star);
/// Proof chain for n >= 5: N* >= (q-2)^n / q - 11 (mk)^{n-1} q^{n-3/2},
/// tested exactly after scaling by q.
bool existence_chain_holds(const Instance& inst, std::uint64_t N_star);

/// Verifies sum_{i=0}^{n-2} (-1)^i C(n,i) q^{n-i-1}
///   = ((q-1)^n - (-1)^n)/q + (-1)^n n, and the full alternating identity
/// sum_{i=0}^{n} (-1)^i C(n,i) q^{n-i} = (q-1)^n (the q-scaled rational form).
/// The n = 1 edge uses the empty-sum convention (left side 0).
bool identity_p1(const BigInt& q, unsigned n);

struct BettiBound {
  BigInt intermediate;  // ceil((d-1)((d-1)^n - (-1)^n)/d)
  BigInt coarse;        // (d-1)^n
};
BettiBound betti_upper(unsigned n, const BigInt& d);

/// sqrt(lhs_sq/rhs_sq) rendered with 6 significant digits (truncated), via
/// integer square roots only; "inf" when rhs_sq = 0 < lhs_sq.
std::string tightness_ratio(const BigInt& lhs_sq, const BigInt& rhs_sq);

}  // namespace mhcount

#endif
