#ifndef MHCOUNT_INSTANCE_HPP
#define MHCOUNT_INSTANCE_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhcount/field.hpp"

namespace mhcount {

/// One equation instance (a_1 X_1^m + ... + a_n X_n^m + a)^k = b X_1...X_n
/// over a fixed field.  Validated against the hypotheses n >= 3, m,k >= 2,
/// all coefficients nonzero, p not dividing mk, and mk > n.  In strict mode a
/// violation aborts construction; otherwise violations are recorded and the
/// instance is usable for exploratory sweeps.  Immutable after construction.
class Instance {
 public:
  static Instance create(std::shared_ptr<const Field> field, unsigned n,
                         std::uint64_t m, std::uint64_t k,
                         std::vector<Elt> coeffs, Elt a, Elt b,
                         bool strict = true);

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  unsigned n() const { return n_; }
  std::uint64_t m() const { return m_; }
  std::uint64_t k() const { return k_; }
  std::uint64_t mk() const { return m_ * k_; }
  const std::vector<Elt>& coeffs() const { return coeffs_; }
  Elt a() const { return a_; }
  Elt b() const { return b_; }
  bool strict() const { return strict_; }

  const std::vector<std::string>& violations() const { return violations_; }
  bool hypotheses_ok() const { return violations_.empty(); }
  std::uint64_t gcd_m_q1() const;

  /// Present when every coefficient lies in the prime subfield (code < p);
  /// lets geometry probes lift the instance into extension fields canonically.
  const std::optional<std::vector<std::uint32_t>>& coeff_ints() const {
    return coeff_ints_;
  }

  /// g(x) = a_1 x_1^m + ... + a_n x_n^m + a.
  Elt eval_g(std::span<const Elt> x) const;
  /// f(x) = g(x)^k - b x_1...x_n.
  Elt eval_f(std::span<const Elt> x) const;
  /// Component j: k m a_j x_j^{m-1} g(x)^{k-1} - b prod_{i != j} x_i.
  std::vector<Elt> eval_gradient(std::span<const Elt> x) const;
  /// Homogenization f^h(x0, x); eval_fh(1, x) = eval_f(x).  Requires mk >= n.
  Elt eval_fh(Elt x0, std::span<const Elt> x) const;
  /// Full gradient of f^h, n+1 components with [0] = d/dX_0.
  std::vector<Elt> eval_fh_gradient(Elt x0, std::span<const Elt> x) const;

  /// Single-line record "p s n m k a1,...,an a b" with elements as codes.
  std::string serialize() const;
  static Instance parse(const std::string& line, bool strict = true,
                        std::uint64_t max_q = Field::kDefaultMaxQ);

 private:
  Instance() = default;

  std::shared_ptr<const Field> field_;
  unsigned n_ = 0;
  std::uint64_t m_ = 0, k_ = 0;
  std::vector<Elt> coeffs_;
  Elt a_ = 0, b_ = 0;
  bool strict_ = true;
  std::vector<std::string> violations_;
  std::optional<std::vector<std::uint32_t>> coeff_ints_;
};

}  // namespace mhcount

#endif
