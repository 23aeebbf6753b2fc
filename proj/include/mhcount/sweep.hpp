#ifndef MHCOUNT_SWEEP_HPP
#define MHCOUNT_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhcount/bounds.hpp"
#include "mhcount/counting.hpp"
#include "mhcount/instance.hpp"

namespace mhcount {

/// Seeded 64-bit linear congruential generator (Knuth's MMIX constants:
/// state = state * 6364136223846793005 + 1442695040888963407), value taken
/// from bits 33..63.  Nonzero field elements are drawn by rejecting code 0.
/// Fixed here so coefficient draws reproduce across implementations.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  Elt draw_nonzero(std::uint32_t q) {
    for (;;) {
      const Elt v = static_cast<Elt>(next() % q);
      if (v != 0) return v;
    }
  }
};

struct Range {
  std::uint64_t lo = 0, hi = 0;  // inclusive
};

enum class CoeffMode { AllOnes, Random, Explicit };

struct SweepSpec {
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> extensions{1};
  Range n_range{3, 3};
  Range m_range{2, 2};
  Range k_range{2, 2};
  CoeffMode coeff_mode = CoeffMode::AllOnes;
  unsigned random_count = 1;
  std::optional<std::uint64_t> seed;  // mandatory for Random
  std::vector<std::vector<std::uint32_t>> explicit_sets;  // a_1..a_n, a, b
  bool strict = true;
  CountBudgets budgets{};
  unsigned workers = 1;
  std::uint64_t max_q = Field::kDefaultMaxQ;
  bool run_probes = true;
  std::string csv_path;
  std::string jsonl_path;

  void validate() const;  // throws Error on inconsistent specs
};

struct ProbeSummary {
  bool ran = false;
  std::string skip_reason;
  std::uint64_t singular_points = 0;
  std::uint64_t unclassified = 0;
  std::uint64_t one_zero_records = 0;
  bool infinity_ok = true;
  std::uint64_t infinity_points = 0;
  bool pcl_ok = true;
  std::uint64_t pcl_violations = 0;
};

struct InstanceResult {
  std::string record;  // serialized instance
  std::uint32_t p = 0, s = 0;
  std::uint64_t q = 0;
  unsigned n = 0;
  std::uint64_t m = 0, k = 0;
  std::vector<Elt> coeffs;
  Elt a = 0, b = 0;
  bool hyp_ok = true;
  std::uint64_t gcd_m_q1 = 1;

  CountReport counts;
  std::optional<std::uint64_t> naive_N;
  bool naive_match = true;

  BoundVerdict v_main, v_nstar, v_pcl, v_inf, v_exist;
  std::vector<BoundVerdict> v_diag;  // levels 1..n-1
  bool inf_sharper_pass = true;
  std::optional<bool> exist_chain_ok;  // n >= 5 only
  BigInt main_N, main_Nstar, threshold;

  ProbeSummary probe;
  double total_seconds = 0;
};

struct SweepResult {
  std::vector<InstanceResult> results;
  std::vector<std::string> skipped;  // grid keys filtered out, with reason
};

/// Deterministic instance stream (lexicographic over (p, s, n, m, k), then
/// coefficient draws from the seeded generator), counted and verified
/// instance by instance; results are ordered by stream position regardless
/// of the worker count.
SweepResult run_sweep(const SweepSpec& spec);

/// One InstanceResult computed outside a sweep (used by the CLI verbs).
InstanceResult process_instance(const Instance& inst, const CountBudgets& budgets,
                                unsigned workers = 1, bool probes = true);

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<InstanceResult>& results);
void write_jsonl(std::ostream& os, const std::vector<InstanceResult>& results);
std::string result_json_line(const InstanceResult& r);

/// 0 iff no FAIL verdict among instances whose hypotheses hold (a naive
/// cross-check mismatch also fails); probe outcomes do not affect the code.
int sweep_exit_code(const std::vector<InstanceResult>& results);

}  // namespace mhcount

#endif
