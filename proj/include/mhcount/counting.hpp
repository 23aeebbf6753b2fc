#ifndef MHCOUNT_COUNTING_HPP
#define MHCOUNT_COUNTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhcount/instance.hpp"

namespace mhcount {

struct CountBudgets {
  std::uint64_t naive_evals = 100'000'000;
  std::uint64_t fast_prefixes = 10'000'000;
  std::uint64_t probe_points = 100'000'000;
};

struct CountOptions {
  CountBudgets budgets{};
  unsigned workers = 1;
};

/// Exact counts for one instance.  N_eq = N - N* is the number of solutions
/// with at least one zero coordinate; N_star_ie is absent when the sampled
/// zero-pattern symmetry check failed (see count_nonzero_ie).
struct CountReport {
  std::uint64_t N = 0;
  std::uint64_t N_star_direct = 0;
  std::optional<std::uint64_t> N_star_ie;
  std::vector<std::uint64_t> N_i;  // N_i[i-1] for i = 1..n
  std::uint64_t N_eq = 0;
  std::uint64_t count_infinity = 0;
  std::uint64_t count_pcl = 0;
  bool symmetry_ok = true;
  std::string symmetry_note;
  std::map<std::string, double> timing;  // seconds per counter
};

/// The counting measure v -> #{x : coeff x^m = v}; total is always q.
struct ValueDistribution {
  std::vector<std::uint64_t> table;
  std::uint64_t total = 0;
};

/// Ground-truth oracle: enumerates all q^n points.  Throws BudgetError when
/// q^n exceeds budgets.naive_evals.
std::uint64_t count_naive(const Instance& inst, const CountOptions& opts = {});

/// Prefix counter: for each (x_1..x_{n-1}) forms P(X) = (C + a_n X^m)^k - D X
/// with C = a_1 x_1^m+...+a_{n-1} x_{n-1}^m + a and D = b x_1...x_{n-1}, and
/// adds the number of distinct roots of P.  Root counts are memoized on
/// (C, D), which determines P.  Throws BudgetError when q^{n-1} exceeds
/// budgets.fast_prefixes.
std::uint64_t count_fast(const Instance& inst, const CountOptions& opts = {});

/// Same prefix scheme restricted to (F_q^*)^{n-1}, subtracting the x_n = 0
/// root exactly when C = 0 (P(0) = C^k).
std::uint64_t count_nonzero_direct(const Instance& inst,
                                   const CountOptions& opts = {});

ValueDistribution diagonal_distribution(const Field& F, Elt coeff,
                                        std::uint64_t m);
ValueDistribution convolve(const Field& F, const ValueDistribution& A,
                           const ValueDistribution& B);
/// Solutions of coeffs[0] x_1^m + ... + coeffs[t-1] x_t^m = rhs by additive
/// convolution of per-variable distributions.
std::uint64_t count_diagonal(const Field& F, std::span<const Elt> coeffs,
                             std::uint64_t m, Elt rhs);

/// Solutions with the first i coordinates zero: the diagonal count over the
/// tail coefficients with right-hand side -a; i = n gives 0 when a != 0.
std::uint64_t count_Ni(const Instance& inst, unsigned i);
/// Variant for an arbitrary set of vanishing coordinate indices (0-based).
std::uint64_t count_Ni_subset(const Instance& inst,
                              std::span<const unsigned> zero_idx);

/// N* via N - sum_{i=1}^n (-1)^{i+1} C(n,i) N_i with exact binomials.  The
/// single-N_i-per-level formula assumes the zero-pattern count is independent
/// of which i coordinates vanish; this is asserted on sampled subsets per
/// level and an AsymmetryError is thrown when it fails (possible for unequal
/// coefficients when gcd(m, q-1) > 1).
std::uint64_t count_nonzero_ie(const Instance& inst,
                               const CountOptions& opts = {});

/// Projective points of the degree-m diagonal hypersurface at infinity:
/// (affine solutions of a_1 x_1^m+...+a_n x_n^m = 0, minus 1) / (q-1).
std::uint64_t count_infinity(const Instance& inst);

inline std::uint64_t count_pcl(std::uint64_t N, std::uint64_t v_infinity) {
  return N + v_infinity;
}

/// Runs every counter and assembles the report (fast path for N and N*,
/// inclusion-exclusion cross-value when the symmetry assertion holds).
CountReport full_report(const Instance& inst, const CountOptions& opts = {});

/// q^e saturating at cap+1, for budget comparisons.
std::uint64_t pow_capped(std::uint64_t base, unsigned e, std::uint64_t cap);

}  // namespace mhcount

#endif
