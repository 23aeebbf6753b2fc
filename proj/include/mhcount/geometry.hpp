#ifndef MHCOUNT_GEOMETRY_HPP
#define MHCOUNT_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "mhcount/counting.hpp"
#include "mhcount/instance.hpp"

namespace mhcount {

enum class SingClass { TwoZerosVj, AllNonzeroW, Unclassified };

const char* sing_class_str(SingClass c);

/// A rational singular point of the affine hypersurface, classified per the
/// two cases of the singular-locus analysis: membership in
/// V_j = V(X_j, X_l, a + sum_{i != j,l} a_i X_i^m) for the first two vanishing
/// coordinates, or in W = V(a_1(n-km) X_1^m + a, a_1X_1^m - a_2X_2^m,
/// a_1X_1^m - a_3X_3^m) when every coordinate is nonzero.
struct SingularPointRecord {
  std::vector<Elt> point;               // codes in F_{q^r}
  std::vector<unsigned> zero_coords;    // 1-based indices
  SingClass cls = SingClass::Unclassified;
  unsigned j = 0, l = 0;                // the V_j pair, 1-based
  unsigned ext_degree = 1;
};

/// Instance lifted into F_{q^r} = F_{p^{s r}}.  r > 1 requires prime-subfield
/// coefficients (coeff_ints), which embed as constant polynomials.
struct LiftedInstance {
  std::shared_ptr<const Field> ext;
  Instance inst;
  unsigned r = 1;
};
LiftedInstance lift_instance(const Instance& inst, unsigned r,
                             std::uint64_t max_q = Field::kDefaultMaxQ);

/// Enumerates all F_{q^r}-points with f = 0 and vanishing gradient, ordered
/// by point code.  Throws BudgetError when q^{rn} exceeds budgets.probe_points.
std::vector<SingularPointRecord> enumerate_singular_points(
    const Instance& inst, unsigned r, const CountOptions& opts = {});

struct InfinityCheck {
  bool ok = true;
  std::uint64_t points_on_variety = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::vector<Elt>> violations;  // at most kMaxStored examples
  static constexpr std::size_t kMaxStored = 64;
};

/// Every projective F_{q^r}-point of V(a_1X_1^m+...+a_nX_n^m) must have a
/// nonvanishing gradient (m a_j x_j^{m-1})_j; forced when p does not divide m,
/// so a violation indicates an implementation fault (or p | m, the negative
/// control).
InfinityCheck check_infinity_nonsingular(const Instance& inst, unsigned r,
                                         const CountOptions& opts = {});

/// For every F_{q^r}-point of pcl(V_f) with x_0 = 0, checks that the full
/// (n+1)-gradient of f^h does not vanish; ok iff none vanish.
InfinityCheck check_pcl_no_singular_at_infinity(const Instance& inst, unsigned r,
                                                const CountOptions& opts = {});

}  // namespace mhcount

#endif
