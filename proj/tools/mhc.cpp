// Command-line driver: exact point counts, bound verdicts, geometry probes,
// and batch sweeps for equations (a_1 X_1^m+...+a_n X_n^m+a)^k = b X_1...X_n
// over F_q.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mhcount/errors.hpp"
#include "mhcount/geometry.hpp"
#include "mhcount/sweep.hpp"

using namespace mhcount;

namespace {

struct InstanceArgs {
  std::uint32_t p = 5, s = 1;
  unsigned n = 3;
  std::uint64_t m = 3, k = 2;
  std::vector<std::uint32_t> coeffs;
  std::uint32_t a = 1, b = 1;
  std::string record;
  bool no_strict = false;
  std::uint64_t max_q = Field::kDefaultMaxQ;
};

void add_instance_flags(CLI::App* cmd, InstanceArgs& ia) {
  cmd->add_option("-p,--prime", ia.p, "field characteristic");
  cmd->add_option("-s,--extension", ia.s, "extension degree (q = p^s)");
  cmd->add_option("-n,--vars", ia.n, "number of variables");
  cmd->add_option("-m,--power", ia.m, "exponent m");
  cmd->add_option("-k,--outer", ia.k, "exponent k");
  cmd->add_option("--coeffs", ia.coeffs, "a_1..a_n as element codes")
      ->delimiter(',');
  cmd->add_option("--a", ia.a, "constant term a (element code)");
  cmd->add_option("--b", ia.b, "product coefficient b (element code)");
  cmd->add_option("--inst", ia.record,
                  "full record \"p s n m k a1,...,an a b\" (overrides the "
                  "individual flags)");
  cmd->add_flag("--no-strict", ia.no_strict,
                "allow hypothesis violations (recorded, not fatal)");
  cmd->add_option("--max-q", ia.max_q, "largest permitted field size");
}

Instance make_instance(const InstanceArgs& ia) {
  if (!ia.record.empty())
    return Instance::parse(ia.record, !ia.no_strict, ia.max_q);
  auto field = Field::build(ia.p, ia.s, ia.max_q);
  std::vector<Elt> cs(ia.coeffs.begin(), ia.coeffs.end());
  if (cs.empty()) cs.assign(ia.n, 1);
  return Instance::create(std::move(field), ia.n, ia.m, ia.k, std::move(cs),
                          ia.a, ia.b, !ia.no_strict);
}

struct BudgetArgs {
  std::uint64_t naive = CountBudgets{}.naive_evals;
  std::uint64_t fast = CountBudgets{}.fast_prefixes;
  std::uint64_t probe = CountBudgets{}.probe_points;
};

void add_budget_flags(CLI::App* cmd, BudgetArgs& ba) {
  cmd->add_option("--budget-naive", ba.naive, "naive evaluation budget")
      ->envname("MHCOUNT_BUDGET_NAIVE");
  cmd->add_option("--budget-fast", ba.fast, "fast-counter prefix budget")
      ->envname("MHCOUNT_BUDGET_FAST");
  cmd->add_option("--budget-probe", ba.probe, "geometry probe point budget")
      ->envname("MHCOUNT_BUDGET_PROBE");
}

CountBudgets budgets_of(const BudgetArgs& ba) {
  return CountBudgets{ba.naive, ba.fast, ba.probe};
}

std::string pretty_poly(const std::vector<std::uint32_t>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    if (coeffs[d] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (d == 0 || coeffs[d] != 1) os << coeffs[d];
    if (d >= 1) {
      os << "X";
      if (d >= 2) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

void print_verdict(const BoundVerdict& v) {
  std::cout << "  " << bound_name_str(v.name) << ": "
            << (!v.hypothesis_ok ? "NA" : v.pass ? "PASS" : "FAIL");
  if (v.hypothesis_ok)
    std::cout << "  tightness=" << v.tightness << "  lhs=" << v.lhs_sq
              << "  rhs=" << v.rhs_sq;
  std::cout << "\n";
}

int cmd_field_info(const InstanceArgs& ia) {
  auto F = Field::build(ia.p, ia.s, ia.max_q);
  std::cout << "q = " << F->q() << " = " << F->p() << "^" << F->s() << "\n"
            << "modulus = " << pretty_poly(F->modulus()) << "  (coefficients";
  for (auto c : F->modulus()) std::cout << " " << c;
  std::cout << ", ascending)\n"
            << "generator = " << F->generator() << "\n"
            << "q-1 = " << F->q() - 1 << ", prime factors:";
  for (auto f : F->q1_prime_factors()) std::cout << " " << f;
  std::cout << "\n";
  return 0;
}

int cmd_count(const InstanceArgs& ia, const BudgetArgs& ba, unsigned workers,
              bool with_naive) {
  Instance inst = make_instance(ia);
  CountOptions co{budgets_of(ba), workers};
  const auto rep = full_report(inst, co);
  std::cout << "instance: " << inst.serialize() << "\n"
            << "N       = " << rep.N << "\n"
            << "N*      = " << rep.N_star_direct << "\n";
  if (rep.N_star_ie)
    std::cout << "N* (IE) = " << *rep.N_star_ie << "\n";
  else
    std::cout << "N* (IE) = unavailable: " << rep.symmetry_note << "\n";
  std::cout << "N^=     = " << rep.N_eq << "\n";
  for (std::size_t i = 0; i < rep.N_i.size(); ++i)
    std::cout << "N_" << i + 1 << "     = " << rep.N_i[i] << "\n";
  std::cout << "|V_inf| = " << rep.count_infinity << "\n"
            << "|pcl|   = " << rep.count_pcl << "\n";
  if (with_naive) {
    const auto naive = count_naive(inst, co);
    std::cout << "naive N = " << naive
              << (naive == rep.N ? "  (matches fast)" : "  (MISMATCH)") << "\n";
    if (naive != rep.N) return 1;
  }
  for (const auto& [name, secs] : rep.timing)
    std::cout << "time[" << name << "] = " << secs << " s\n";
  return 0;
}

int cmd_verify(const InstanceArgs& ia, const BudgetArgs& ba, unsigned workers) {
  Instance inst = make_instance(ia);
  const auto R = process_instance(inst, budgets_of(ba), workers, false);
  std::cout << "instance: " << R.record << "\n"
            << "N = " << R.counts.N << ", N* = " << R.counts.N_star_direct
            << ", main terms " << R.main_N << " / " << R.main_Nstar << "\n";
  print_verdict(R.v_main);
  for (const auto& v : R.v_diag) print_verdict(v);
  print_verdict(R.v_nstar);
  print_verdict(R.v_pcl);
  print_verdict(R.v_inf);
  print_verdict(R.v_exist);
  if (R.exist_chain_ok)
    std::cout << "  existence chain (n>=5): "
              << (*R.exist_chain_ok ? "holds" : "violated") << "\n";
  std::vector<InstanceResult> one;
  one.push_back(R);
  return sweep_exit_code(one);
}

int cmd_probe(const InstanceArgs& ia, const BudgetArgs& ba, unsigned r) {
  Instance inst = make_instance(ia);
  CountOptions co{budgets_of(ba), 1};
  const auto recs = enumerate_singular_points(inst, r, co);
  for (const auto& rec : recs) {
    std::ostringstream os;
    os << "{\"point_codes\":[";
    for (std::size_t i = 0; i < rec.point.size(); ++i)
      os << (i ? "," : "") << rec.point[i];
    os << "],\"ext_degree\":" << rec.ext_degree << ",\"zero_coords\":[";
    for (std::size_t i = 0; i < rec.zero_coords.size(); ++i)
      os << (i ? "," : "") << rec.zero_coords[i];
    os << "],\"classification\":\"" << sing_class_str(rec.cls);
    if (rec.cls == SingClass::TwoZerosVj) os << "(" << rec.j << "," << rec.l << ")";
    os << "\"}";
    std::cout << os.str() << "\n";
  }
  const auto inf = check_infinity_nonsingular(inst, r, co);
  const auto pcl = check_pcl_no_singular_at_infinity(inst, r, co);
  std::cerr << "singular points: " << recs.size() << " (r = " << r << ")\n"
            << "infinity nonsingular: " << (inf.ok ? "yes" : "NO") << " over "
            << inf.points_on_variety << " points\n"
            << "pcl nonsingular at infinity: " << (pcl.ok ? "yes" : "NO")
            << " (" << pcl.violation_count << " violations)\n";
  return 0;
}

int cmd_sweep(const SweepSpec& spec) {
  const auto outcome = run_sweep(spec);
  if (!spec.csv_path.empty()) {
    std::ofstream os(spec.csv_path);
    if (!os) throw Error("sweep: cannot write " + spec.csv_path);
    write_csv(os, outcome.results);
  }
  if (!spec.jsonl_path.empty()) {
    std::ofstream os(spec.jsonl_path);
    if (!os) throw Error("sweep: cannot write " + spec.jsonl_path);
    write_jsonl(os, outcome.results);
  }
  std::uint64_t fails = 0, na = 0;
  for (const auto& r : outcome.results) {
    std::vector<const BoundVerdict*> vs{&r.v_main, &r.v_nstar, &r.v_pcl,
                                        &r.v_inf, &r.v_exist};
    for (const auto& v : r.v_diag) vs.push_back(&v);
    for (const auto* v : vs) {
      if (!v->hypothesis_ok)
        ++na;
      else if (!v->pass)
        ++fails;
    }
  }
  std::cout << "instances: " << outcome.results.size() << ", skipped keys: "
            << outcome.skipped.size() << ", verdict FAILs: " << fails
            << ", NA: " << na << "\n";
  return sweep_exit_code(outcome.results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact point counting and bound verification for "
               "Markoff-Hurwitz equations over finite fields"};
  app.require_subcommand(1);

  InstanceArgs ia;
  BudgetArgs ba;
  unsigned workers = 1;
  bool with_naive = false;
  unsigned probe_r = 1;

  auto* c_field = app.add_subcommand("field-info", "print field structure");
  add_instance_flags(c_field, ia);

  auto* c_count = app.add_subcommand("count", "exact counts for one instance");
  add_instance_flags(c_count, ia);
  add_budget_flags(c_count, ba);
  c_count->add_option("--workers", workers, "worker threads");
  c_count->add_flag("--naive", with_naive, "also run the naive oracle");

  auto* c_verify = app.add_subcommand("verify", "counts plus bound verdicts");
  add_instance_flags(c_verify, ia);
  add_budget_flags(c_verify, ba);
  c_verify->add_option("--workers", workers, "worker threads");

  auto* c_probe = app.add_subcommand("probe", "singular point enumeration");
  add_instance_flags(c_probe, ia);
  add_budget_flags(c_probe, ba);
  c_probe->add_option("-r,--ext-degree", probe_r, "probe in F_{q^r}");

  SweepSpec spec;
  std::string coeff_mode_str = "all-ones";
  std::vector<std::string> explicit_strs;
  std::string n_str = "3", m_str = "2", k_str = "2";
  std::uint64_t seed = 0;
  auto* c_sweep = app.add_subcommand("sweep", "batch run over a parameter grid");
  c_sweep->set_config("--config", "", "key=value config file; command line wins");
  c_sweep->add_option("--primes", spec.primes, "characteristics to sweep")
      ->delimiter(',')
      ->required();
  c_sweep->add_option("--extensions", spec.extensions, "extension degrees s")
      ->delimiter(',');
  c_sweep->add_option("--n-range", n_str, "n range, \"lo:hi\" or single value");
  c_sweep->add_option("--m-range", m_str, "m range");
  c_sweep->add_option("--k-range", k_str, "k range");
  c_sweep->add_option("--coeff-mode", coeff_mode_str,
                      "all-ones | random | explicit");
  c_sweep->add_option("--random-count", spec.random_count,
                      "random instances per grid key");
  auto* seed_opt = c_sweep->add_option("--seed", seed, "LCG seed (random mode)");
  c_sweep->add_option("--explicit-coeffs", explicit_strs,
                      "comma-joined a_1..a_n,a,b; repeatable");
  bool no_strict_sweep = false, no_probes = false;
  c_sweep->add_flag("--no-strict", no_strict_sweep, "keep invalid instances");
  c_sweep->add_flag("--no-probes", no_probes, "skip geometry probes");
  c_sweep->add_option("--workers", spec.workers, "parallel instances");
  c_sweep->add_option("--max-q", spec.max_q, "largest permitted field size");
  c_sweep->add_option("--csv", spec.csv_path, "CSV output path");
  c_sweep->add_option("--jsonl", spec.jsonl_path, "JSON-lines output path");
  c_sweep->add_option("--budget-naive", spec.budgets.naive_evals,
                      "naive evaluation budget")
      ->envname("MHCOUNT_BUDGET_NAIVE");
  c_sweep->add_option("--budget-fast", spec.budgets.fast_prefixes,
                      "fast-counter prefix budget")
      ->envname("MHCOUNT_BUDGET_FAST");
  c_sweep->add_option("--budget-probe", spec.budgets.probe_points,
                      "geometry probe point budget")
      ->envname("MHCOUNT_BUDGET_PROBE");

  CLI11_PARSE(app, argc, argv);

  const auto parse_range = [](const std::string& str) {
    Range r;
    const auto colon = str.find(':');
    if (colon == std::string::npos) {
      r.lo = r.hi = std::stoull(str);
    } else {
      r.lo = std::stoull(str.substr(0, colon));
      r.hi = std::stoull(str.substr(colon + 1));
    }
    return r;
  };

  try {
    if (c_field->parsed()) return cmd_field_info(ia);
    if (c_count->parsed()) return cmd_count(ia, ba, workers, with_naive);
    if (c_verify->parsed()) return cmd_verify(ia, ba, workers);
    if (c_probe->parsed()) return cmd_probe(ia, ba, probe_r);
    if (c_sweep->parsed()) {
      spec.n_range = parse_range(n_str);
      spec.m_range = parse_range(m_str);
      spec.k_range = parse_range(k_str);
      spec.strict = !no_strict_sweep;
      spec.run_probes = !no_probes;
      if (seed_opt->count()) spec.seed = seed;
      if (coeff_mode_str == "all-ones")
        spec.coeff_mode = CoeffMode::AllOnes;
      else if (coeff_mode_str == "random")
        spec.coeff_mode = CoeffMode::Random;
      else if (coeff_mode_str == "explicit")
        spec.coeff_mode = CoeffMode::Explicit;
      else
        throw Error("unknown coefficient mode: " + coeff_mode_str);
      for (const auto& sstr : explicit_strs) {
        std::vector<std::uint32_t> vals;
        std::istringstream is(sstr);
        std::string tok;
        while (std::getline(is, tok, ','))
          vals.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        spec.explicit_sets.push_back(std::move(vals));
      }
      return cmd_sweep(spec);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
