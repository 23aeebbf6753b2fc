#ifndef MHCOUNT_FIELD_HPP
#define MHCOUNT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mhcount/bigint.hpp"

namespace mhcount {

/// Field elements are integer codes in [0, q-1]: the base-p encoding of the
/// coefficient vector of the representative polynomial (coefficient of X^j is
/// the p^j digit). For prime fields the code is the residue itself.
using Elt = std::uint32_t;

/// A concrete finite field F_{p^s} at desk scale, with eager exp/dlog tables.
///
/// The modulus is the lexicographically smallest monic irreducible degree-s
/// polynomial over Z_p (coefficient sequences compared low-degree-first), and
/// the generator is the smallest-code element of multiplicative order q-1, so
/// two builds of the same (p, s) are identical and results are reproducible.
/// Immutable after construction; all operations are pure and thread-safe.
class Field {
 public:
  static constexpr std::uint64_t kDefaultMaxQ = 1'000'000;

  /// Builds F_{p^s}. Throws Error for non-prime p, s < 1, or q > max_q.
  static std::shared_ptr<const Field> build(std::uint32_t p, std::uint32_t s,
                                            std::uint64_t max_q = kDefaultMaxQ);

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t q() const { return q_; }

  /// Monic irreducible modulus, s+1 coefficients in ascending degree.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elt generator() const { return gen_; }
  /// Distinct prime factors of q-1 (ascending).
  const std::vector<std::uint64_t>& q1_prime_factors() const { return q1_primes_; }

  /// Discrete log base generator(); defined for nonzero x only.
  std::uint32_t dlog(Elt x) const { return dlog_[x]; }
  /// generator()^e, e reduced mod q-1.
  Elt exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  Elt add(Elt a, Elt b) const {
    if (s_ == 1) {
      std::uint32_t t = a + b;
      return t >= p_ ? t - p_ : t;
    }
    return add_ext(a, b);
  }
  Elt sub(Elt a, Elt b) const {
    if (s_ == 1) return a >= b ? a - b : a + p_ - b;
    return sub_ext(a, b);
  }
  Elt neg(Elt a) const {
    if (s_ == 1) return a == 0 ? 0 : p_ - a;
    return sub_ext(0, a);
  }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[dlog_[a] + dlog_[b]];  // exp_ table doubled, no reduction needed
  }
  /// Multiplicative inverse; throws Error on zero.
  Elt inv(Elt a) const;
  /// a^e by square-and-multiply; 0^0 = 1 by convention.
  Elt pow(Elt a, std::uint64_t e) const;
  /// Arbitrary-precision exponent, reduced mod q-1 for nonzero base.
  Elt pow(Elt a, const BigInt& e) const;

  /// Embeds an integer through the prime subfield (value mod p).
  Elt from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elt>(r);
  }

  /// All q elements in ascending code order, starting with 0.
  std::vector<Elt> enumerate() const;

  /// Base-p digits of the code = coefficients of the representative polynomial.
  std::vector<std::uint32_t> coeffs(Elt a) const;
  Elt from_coeffs(std::span<const std::uint32_t> c) const;

  /// #{x in F_q : x^m = v}.  1 if v = 0; otherwise gcd(m, q-1) when the dlog
  /// of v is divisible by that gcd, else 0.  Requires m >= 1.
  std::uint32_t mth_power_root_count(std::uint64_t m, Elt v) const;

 private:
  Field() = default;
  Elt add_ext(Elt a, Elt b) const;
  Elt sub_ext(Elt a, Elt b) const;

  std::uint32_t p_ = 0, s_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elt gen_ = 0;
  std::vector<Elt> exp_;           // size 2(q-1): exp_[i] = g^(i mod q-1)
  std::vector<std::uint32_t> dlog_;  // size q; dlog_[0] = q-1 sentinel
  std::vector<std::uint64_t> q1_primes_;
};

/// Trial-division primality test for desk-scale inputs.
bool is_prime(std::uint64_t n);

}  // namespace mhcount

#endif
