#include "mhcount/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mhcount/errors.hpp"
#include "mhcount/geometry.hpp"

namespace mhcount {

namespace {
using Clock = std::chrono::steady_clock;
using nlohmann::json;
}  // namespace

void SweepSpec::validate() const {
  if (primes.empty()) throw Error("sweep: no primes given");
  for (auto p : primes)
    if (!is_prime(p)) throw Error("sweep: " + std::to_string(p) + " is not prime");
  if (extensions.empty()) throw Error("sweep: no extension degrees given");
  for (auto s : extensions)
    if (s < 1) throw Error("sweep: extension degree must be >= 1");
  if (n_range.lo > n_range.hi || m_range.lo > m_range.hi ||
      k_range.lo > k_range.hi)
    throw Error("sweep: empty range");
  if (n_range.lo < 1) throw Error("sweep: n must be positive");
  if (coeff_mode == CoeffMode::Random) {
    if (!seed) throw Error("sweep: random coefficients need a seed");
    if (random_count < 1) throw Error("sweep: random count must be >= 1");
  }
  if (coeff_mode == CoeffMode::Explicit) {
    if (explicit_sets.empty()) throw Error("sweep: no explicit coefficient sets");
    if (n_range.lo != n_range.hi)
      throw Error("sweep: explicit coefficients need a single n");
    for (const auto& v : explicit_sets)
      if (v.size() != n_range.lo + 2)
        throw Error("sweep: explicit set needs n+2 values (a_1..a_n, a, b)");
  }
}

InstanceResult process_instance(const Instance& inst, const CountBudgets& budgets,
                                unsigned workers, bool probes) {
  const auto t_start = Clock::now();
  InstanceResult R;
  const Field& F = inst.field();
  R.record = inst.serialize();
  R.p = F.p();
  R.s = F.s();
  R.q = F.q();
  R.n = inst.n();
  R.m = inst.m();
  R.k = inst.k();
  R.coeffs = inst.coeffs();
  R.a = inst.a();
  R.b = inst.b();
  R.hyp_ok = inst.hypotheses_ok();
  R.gcd_m_q1 = inst.gcd_m_q1();

  CountOptions co{budgets, workers};
  R.counts = full_report(inst, co);

  if (pow_capped(F.q(), inst.n(), budgets.naive_evals) <= budgets.naive_evals) {
    const auto t0 = Clock::now();
    R.naive_N = count_naive(inst, co);
    R.counts.timing["naive"] =
        std::chrono::duration<double>(Clock::now() - t0).count();
    R.naive_match = *R.naive_N == R.counts.N;
  }

  R.v_main = verdict_theorem_main(inst, R.counts.N);
  for (unsigned i = 1; i + 1 <= inst.n(); ++i)
    R.v_diag.push_back(verdict_diagonal(inst, i, R.counts.N_i[i - 1]));
  R.v_nstar = verdict_nstar(inst, R.counts.N_star_direct);
  R.v_pcl = verdict_pcl(inst, R.counts.count_pcl);
  R.v_inf = verdict_infinity(inst, R.counts.count_infinity);
  R.inf_sharper_pass = infinity_sharper_pass(inst, R.counts.count_infinity);
  R.v_exist = verdict_existence(inst, R.counts.N_star_direct);
  if (inst.n() >= 5)
    R.exist_chain_ok = existence_chain_holds(inst, R.counts.N_star_direct);

  R.main_N = big_pow(BigInt(F.q()), inst.n() - 1);
  R.main_Nstar = nstar_main_term(BigInt(F.q()), inst.n());
  R.threshold = existence_threshold(inst.n(), inst.m(), inst.k()).threshold;

  if (probes) {
    try {
      const auto recs = enumerate_singular_points(inst, 1, co);
      R.probe.ran = true;
      R.probe.singular_points = recs.size();
      for (const auto& rec : recs) {
        if (rec.cls == SingClass::Unclassified) ++R.probe.unclassified;
        if (rec.zero_coords.size() == 1) ++R.probe.one_zero_records;
      }
      const auto inf = check_infinity_nonsingular(inst, 1, co);
      R.probe.infinity_ok = inf.ok;
      R.probe.infinity_points = inf.points_on_variety;
      const auto pcl = check_pcl_no_singular_at_infinity(inst, 1, co);
      R.probe.pcl_ok = pcl.ok;
      R.probe.pcl_violations = pcl.violation_count;
    } catch (const BudgetError& e) {
      R.probe.ran = false;
      R.probe.skip_reason = e.what();
    }
  }

  R.total_seconds = std::chrono::duration<double>(Clock::now() - t_start).count();
  return R;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult out;

  std::vector<std::uint32_t> primes = spec.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<std::uint32_t> exts = spec.extensions;
  std::sort(exts.begin(), exts.end());
  exts.erase(std::unique(exts.begin(), exts.end()), exts.end());

  Lcg lcg(spec.seed.value_or(0));
  std::map<std::uint64_t, std::shared_ptr<const Field>> field_cache;
  std::vector<Instance> instances;

  for (std::uint32_t p : primes) {
    for (std::uint32_t s : exts) {
      std::uint64_t q = 1;
      bool q_ok = true;
      for (std::uint32_t i = 0; i < s; ++i) {
        q *= p;
        if (q > spec.max_q) {
          q_ok = false;
          break;
        }
      }
      const std::uint64_t key = (static_cast<std::uint64_t>(p) << 8) | s;
      if (q_ok && !field_cache.count(key))
        field_cache[key] = Field::build(p, s, spec.max_q);
      for (std::uint64_t n = spec.n_range.lo; n <= spec.n_range.hi; ++n) {
        for (std::uint64_t m = spec.m_range.lo; m <= spec.m_range.hi; ++m) {
          for (std::uint64_t k = spec.k_range.lo; k <= spec.k_range.hi; ++k) {
            std::ostringstream keyname;
            keyname << "p=" << p << " s=" << s << " n=" << n << " m=" << m
                    << " k=" << k;
            if (!q_ok) {
              out.skipped.push_back(keyname.str() + ": q exceeds max_q");
              continue;
            }
            if (spec.strict &&
                (n < 3 || m < 2 || k < 2 || (m * k) % p == 0 || m * k <= n)) {
              out.skipped.push_back(keyname.str() + ": hypothesis filter");
              continue;
            }
            const auto& field = field_cache[key];
            const auto nn = static_cast<unsigned>(n);
            auto push = [&](std::vector<Elt> cs, Elt a, Elt b) {
              try {
                instances.push_back(Instance::create(field, nn, m, k,
                                                     std::move(cs), a, b,
                                                     spec.strict));
              } catch (const HypothesisError&) {
                out.skipped.push_back(keyname.str() + ": hypothesis filter");
              }
            };
            switch (spec.coeff_mode) {
              case CoeffMode::AllOnes:
                push(std::vector<Elt>(nn, 1), 1, 1);
                break;
              case CoeffMode::Random:
                for (unsigned c = 0; c < spec.random_count; ++c) {
                  std::vector<Elt> cs(nn);
                  for (auto& v : cs) v = lcg.draw_nonzero(field->q());
                  const Elt a = lcg.draw_nonzero(field->q());
                  const Elt b = lcg.draw_nonzero(field->q());
                  push(std::move(cs), a, b);
                }
                break;
              case CoeffMode::Explicit:
                for (const auto& set : spec.explicit_sets) {
                  std::vector<Elt> cs(set.begin(), set.begin() + nn);
                  push(std::move(cs), set[nn], set[nn + 1]);
                }
                break;
            }
          }
        }
      }
    }
  }

  out.results.resize(instances.size());
  std::vector<char> failed(instances.size(), 0);
  std::vector<std::string> errors(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      try {
        out.results[i] = process_instance(instances[i], spec.budgets, 1,
                                          spec.run_probes);
      } catch (const Error& e) {
        failed[i] = 1;
        errors[i] = e.what();
      }
    }
  };
  const unsigned pool = std::max(1u, spec.workers);
  if (pool == 1 || instances.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < std::min<std::size_t>(pool, instances.size()); ++w)
      threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // Budget exhaustion is per-instance, not fatal: drop the failed slots in
  // stream order and record why.
  SweepResult final;
  final.skipped = std::move(out.skipped);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (failed[i])
      final.skipped.push_back(instances[i].serialize() + ": " + errors[i]);
    else
      final.results.push_back(std::move(out.results[i]));
  }
  return final;
}

namespace {

const char* kCsvHeader =
    "p,s,q,n,m,k,coeffs,a,b,gcd_m_q1,N,Nstar,main_N,main_Nstar,err_N,err_Nstar,"
    "verdict_main,verdict_nstar,verdict_pcl,verdict_inf,tightness_main,"
    "tightness_nstar,existence_threshold,nstar_positive";

std::string verdict_cell(const BoundVerdict& v) {
  if (!v.hypothesis_ok) return "NA";
  return v.pass ? "PASS" : "FAIL";
}

std::string tightness_cell(const BoundVerdict& v) {
  return v.hypothesis_ok ? v.tightness : "NA";
}

}  // namespace

std::string csv_header() { return kCsvHeader; }

void write_csv(std::ostream& os, const std::vector<InstanceResult>& results) {
  os << kCsvHeader << '\n';
  for (const auto& r : results) {
    os << r.p << ',' << r.s << ',' << r.q << ',' << r.n << ',' << r.m << ','
       << r.k << ',';
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      if (i) os << ';';
      os << r.coeffs[i];
    }
    os << ',' << r.a << ',' << r.b << ',' << r.gcd_m_q1 << ',' << r.counts.N
       << ',' << r.counts.N_star_direct << ',' << r.main_N.str() << ','
       << r.main_Nstar.str() << ',' << (BigInt(r.counts.N) - r.main_N).str()
       << ',' << (BigInt(r.counts.N_star_direct) - r.main_Nstar).str() << ','
       << verdict_cell(r.v_main) << ',' << verdict_cell(r.v_nstar) << ','
       << verdict_cell(r.v_pcl) << ',' << verdict_cell(r.v_inf) << ','
       << tightness_cell(r.v_main) << ',' << tightness_cell(r.v_nstar) << ','
       << r.threshold.str() << ',' << (r.counts.N_star_direct > 0 ? 1 : 0)
       << '\n';
  }
}

namespace {

json verdict_json(const BoundVerdict& v) {
  json j{{"name", bound_name_str(v.name)},
         {"pass", v.pass},
         {"hypothesis_ok", v.hypothesis_ok},
         {"lhs_sq", v.lhs_sq.str()},
         {"rhs_sq", v.rhs_sq.str()},
         {"tightness", v.tightness}};
  if (v.secondary_pass) j["secondary_pass"] = *v.secondary_pass;
  return j;
}

}  // namespace

std::string result_json_line(const InstanceResult& r) {
  json counts{{"N", r.counts.N},
              {"N_star_direct", r.counts.N_star_direct},
              {"N_i", r.counts.N_i},
              {"N_eq", r.counts.N_eq},
              {"count_infinity", r.counts.count_infinity},
              {"count_pcl", r.counts.count_pcl},
              {"timing", r.counts.timing}};
  if (r.counts.N_star_ie) counts["N_star_ie"] = *r.counts.N_star_ie;
  if (r.naive_N) {
    counts["naive_N"] = *r.naive_N;
    counts["naive_match"] = r.naive_match;
  }

  json verdicts = json::array();
  verdicts.push_back(verdict_json(r.v_main));
  for (const auto& v : r.v_diag) verdicts.push_back(verdict_json(v));
  verdicts.push_back(verdict_json(r.v_nstar));
  verdicts.push_back(verdict_json(r.v_pcl));
  verdicts.push_back(verdict_json(r.v_inf));
  verdicts.push_back(verdict_json(r.v_exist));

  json j{{"instance",
          {{"record", r.record},
           {"p", r.p},
           {"s", r.s},
           {"q", r.q},
           {"n", r.n},
           {"m", r.m},
           {"k", r.k},
           {"coeffs", r.coeffs},
           {"a", r.a},
           {"b", r.b}}},
         {"flags",
          {{"hypotheses_ok", r.hyp_ok},
           {"gcd_m_q1", r.gcd_m_q1},
           {"symmetry_ok", r.counts.symmetry_ok}}},
         {"counts", counts},
         {"main_terms",
          {{"main_N", r.main_N.str()}, {"main_Nstar", r.main_Nstar.str()}}},
         {"verdicts", verdicts},
         {"existence",
          {{"threshold", r.threshold.str()},
           {"nstar_positive", r.counts.N_star_direct > 0}}},
         {"infinity_sharper_pass", r.inf_sharper_pass},
         {"total_seconds", r.total_seconds}};
  if (r.exist_chain_ok) j["existence"]["chain_ok"] = *r.exist_chain_ok;
  if (!r.counts.symmetry_ok) j["flags"]["symmetry_note"] = r.counts.symmetry_note;

  json probe{{"ran", r.probe.ran}};
  if (r.probe.ran) {
    probe["singular_points"] = r.probe.singular_points;
    probe["unclassified"] = r.probe.unclassified;
    probe["one_zero_records"] = r.probe.one_zero_records;
    probe["infinity_ok"] = r.probe.infinity_ok;
    probe["infinity_points"] = r.probe.infinity_points;
    probe["pcl_ok"] = r.probe.pcl_ok;
    probe["pcl_violations"] = r.probe.pcl_violations;
  } else {
    probe["skip_reason"] = r.probe.skip_reason;
  }
  j["probe"] = probe;
  return j.dump();
}

void write_jsonl(std::ostream& os, const std::vector<InstanceResult>& results) {
  for (const auto& r : results) os << result_json_line(r) << '\n';
}

int sweep_exit_code(const std::vector<InstanceResult>& results) {
  for (const auto& r : results) {
    const auto bad = [](const BoundVerdict& v) {
      return v.hypothesis_ok && !v.pass;
    };
    if (bad(r.v_main) || bad(r.v_nstar) || bad(r.v_pcl) || bad(r.v_inf) ||
        bad(r.v_exist))
      return 1;
    for (const auto& v : r.v_diag)
      if (bad(v)) return 1;
    if (r.naive_N && !r.naive_match) return 1;
  }
  return 0;
}

}  // namespace mhcount
