#ifndef MHCOUNT_ERRORS_HPP
#define MHCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mhcount {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration would exceed the configured budget.
struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

/// Instance violates the equation hypotheses in strict mode.
struct HypothesisError : Error {
  explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

/// Zero-pattern counts were found to depend on which coordinates vanish,
/// so the single-N_i-per-level inclusion-exclusion does not apply.
struct AsymmetryError : Error {
  explicit AsymmetryError(const std::string& msg) : Error(msg) {}
};

}  // namespace mhcount

#endif
