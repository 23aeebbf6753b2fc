// Acceptance suite: runs every headline check at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion.  Exit code is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include "mhcount/errors.hpp"
#include "mhcount/geometry.hpp"
#include "mhcount/sweep.hpp"

using namespace mhcount;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
  int failures = 0;
  void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

SweepSpec acceptance_spec(CoeffMode mode, std::uint64_t seed) {
  SweepSpec spec;
  spec.primes = {5, 7, 11, 13};
  spec.extensions = {1, 2};
  spec.n_range = {3, 5};
  spec.m_range = {2, 4};
  spec.k_range = {2, 4};
  spec.coeff_mode = mode;
  spec.random_count = 1;
  if (mode == CoeffMode::Random) spec.seed = seed;
  spec.strict = true;
  spec.budgets.naive_evals = 10'000'000;  // the q^n <= 10^7 oracle window
  spec.budgets.fast_prefixes = 10'000'000;
  spec.budgets.probe_points = 100'000'000;
  spec.workers = 4;
  spec.run_probes = true;
  return spec;
}

}  // namespace

int main() {
  Harness h;
  const auto t_total = Clock::now();

  // Shared sweep: the all-ones grid plus a seeded random batch over
  // p in {5,7,11,13}, s in {1,2}, n in {3,4,5}, m,k in {2,3,4}.
  const auto t_sweep = Clock::now();
  auto ones = run_sweep(acceptance_spec(CoeffMode::AllOnes, 0));
  auto rnd = run_sweep(acceptance_spec(CoeffMode::Random, 20250810));
  std::vector<InstanceResult> all;
  for (auto& r : ones.results) all.push_back(std::move(r));
  for (auto& r : rnd.results) all.push_back(std::move(r));
  const double sweep_secs = secs_since(t_sweep);

  // ---- criterion 1: oracle equivalence --------------------------------
  {
    std::uint64_t checked = 0, fast_eq = 0, ie_checked = 0, ie_eq = 0;
    std::set<std::uint32_t> primes_seen, s_seen;
    std::set<unsigned> n_seen;
    bool symmetric_ie_available = true;
    for (const auto& r : all) {
      if (!r.naive_N) continue;
      ++checked;
      if (r.naive_match) ++fast_eq;
      primes_seen.insert(r.p);
      s_seen.insert(r.s);
      n_seen.insert(r.n);
      const bool all_ones_inst =
          std::all_of(r.coeffs.begin(), r.coeffs.end(),
                      [](Elt c) { return c == 1; }) &&
          r.a == 1 && r.b == 1;
      if (all_ones_inst || r.gcd_m_q1 == 1) {
        if (!r.counts.N_star_ie) {
          symmetric_ie_available = false;
          continue;
        }
        ++ie_checked;
        if (*r.counts.N_star_ie == r.counts.N_star_direct) ++ie_eq;
      }
    }
    const bool ok = checked >= 50 && fast_eq == checked &&
                    symmetric_ie_available && ie_eq == ie_checked &&
                    primes_seen.size() == 4 && s_seen.size() == 2 &&
                    n_seen.size() == 3 && sweep_secs < 300.0;
    std::ostringstream d;
    d << "count_fast = count_naive on " << fast_eq << "/" << checked
      << " instances (q^n <= 1e7), N*_ie = N*_direct on " << ie_eq << "/"
      << ie_checked << ", spanning " << primes_seen.size() << " primes, "
      << s_seen.size() << " extensions, " << n_seen.size()
      << " dimensions; sweep took " << sweep_secs << " s";
    h.report("1 oracle-equivalence", ok, d.str());
  }

  // ---- criterion 2: main estimate -------------------------------------
  {
    std::uint64_t pass = 0, total = 0;
    BigInt worst_lhs = 0, worst_rhs = 1;
    std::string worst = "0";
    for (const auto& r : all) {
      ++total;
      if (r.v_main.pass) ++pass;
      if (r.v_main.lhs_sq * worst_rhs > worst_lhs * r.v_main.rhs_sq) {
        worst_lhs = r.v_main.lhs_sq;
        worst_rhs = r.v_main.rhs_sq;
        worst = r.v_main.tightness;
      }
    }
    std::ostringstream d;
    d << pass << "/" << total << " PASS; worst tightness " << worst;
    h.report("2 theorem-4.1-bound", pass == total && total > 0, d.str());
  }

  // ---- criterion 3: diagonal bounds and exact level counts ------------
  {
    std::uint64_t vpass = 0, vtotal = 0;
    bool exact_ok = true;
    for (const auto& r : all) {
      for (const auto& v : r.v_diag) {
        ++vtotal;
        if (v.pass) ++vpass;
      }
      if (r.gcd_m_q1 == 1) {
        for (unsigned i = 1; i + 2 <= r.n; ++i)
          exact_ok = exact_ok &&
                     BigInt(r.counts.N_i[i - 1]) ==
                         big_pow(BigInt(r.q), r.n - i - 1);
        exact_ok = exact_ok && r.counts.N_i[r.n - 2] == 1;
        exact_ok = exact_ok && r.counts.N_i[r.n - 1] == 0;
      }
    }
    std::ostringstream d;
    d << vpass << "/" << vtotal << " diagonal verdicts PASS; gcd=1 level "
      << "counts exact: " << (exact_ok ? "yes" : "no");
    h.report("3 prop-4.1-diagonal", vpass == vtotal && exact_ok, d.str());
  }

  // ---- criterion 4: N* estimate ----------------------------------------
  {
    std::uint64_t pass = 0, total = 0;
    bool integral = true;
    for (const auto& r : all) {
      if (r.gcd_m_q1 != 1) continue;
      ++total;
      if (r.v_nstar.pass && r.v_nstar.hypothesis_ok) ++pass;
      const BigInt q = r.q;
      const BigInt sign = (r.n % 2 == 0) ? 1 : -1;
      integral = integral && (big_pow(q - 1, r.n) - sign) % q == 0;
    }
    std::ostringstream d;
    d << pass << "/" << total << " PASS with gcd(m,q-1)=1; main term "
      << "integral: " << (integral ? "yes" : "no");
    h.report("4 prop-4.5-nstar", pass == total && total > 0 && integral,
             d.str());
  }

  // ---- criterion 5: projective consistency -----------------------------
  {
    bool additive = true;
    std::uint64_t pcl_pass = 0, inf_pass = 0, total = 0;
    for (const auto& r : all) {
      ++total;
      additive =
          additive && r.counts.count_pcl == r.counts.N + r.counts.count_infinity;
      if (r.v_pcl.pass) ++pcl_pass;
      if (r.v_inf.pass) ++inf_pass;
    }
    // canonical instance: independent 125-point enumeration of the cone
    std::uint64_t affine = 0;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y)
        for (int z = 0; z < 5; ++z)
          if ((x * x * x + y * y * y + z * z * z) % 5 == 0) ++affine;
    const auto canon =
        Instance::create(Field::build(5, 1), 3, 3, 2, {1, 1, 1}, 1, 1);
    const bool canon_ok =
        count_infinity(canon) == 6 && (affine - 1) / 4 == 6;
    std::ostringstream d;
    d << "pcl = N + V_inf on " << total << "/" << total << "; pcl bound "
      << pcl_pass << "/" << total << ", infinity bound " << inf_pass << "/"
      << total << "; canonical V_inf = 6: " << (canon_ok ? "yes" : "no");
    h.report("5 projective-consistency",
             additive && pcl_pass == total && inf_pass == total && canon_ok,
             d.str());
  }

  // ---- criterion 6: identity suite -------------------------------------
  {
    const auto t0 = Clock::now();
    bool ok = true;
    for (std::uint32_t q = 2; q <= 1000 && ok; ++q)
      for (unsigned n = 1; n <= 20 && ok; ++n) ok = identity_p1(q, n);
    for (unsigned n = 1; n <= 20 && ok; ++n)
      ok = identity_p1(BigInt(1000000), n);
    const double secs = secs_since(t0);
    std::ostringstream d;
    d << "q in {2..1000} u {10^6}, n in {1..20}: "
      << (ok ? "all hold" : "violated") << " in " << secs << " s";
    h.report("6 identity-p1", ok && secs < 10.0, d.str());
  }

  // ---- criterion 7: geometry probes ------------------------------------
  {
    std::uint64_t probed = 0, unclassified = 0, one_zero = 0;
    std::uint64_t inf_ok = 0, pcl_ok_count = 0;
    for (const auto& r : all) {
      if (!r.probe.ran) continue;
      ++probed;
      unclassified += r.probe.unclassified;
      one_zero += r.probe.one_zero_records;
      if (r.probe.infinity_ok) ++inf_ok;
      if (r.probe.pcl_ok) ++pcl_ok_count;
    }
    // extension probes on prime-subfield instances
    std::uint64_t ext_probed = 0, ext_uncl = 0, ext_onezero = 0, ext_inf = 0,
                  ext_pcl = 0;
    for (const auto& r : all) {
      if (ext_probed >= 5) break;
      if (r.s != 1) continue;
      if (pow_capped(r.q * r.q, r.n, 100'000'000) > 100'000'000) continue;
      const auto inst = Instance::parse(r.record);
      if (!inst.coeff_ints()) continue;
      const auto recs = enumerate_singular_points(inst, 2);
      for (const auto& rec : recs) {
        if (rec.cls == SingClass::Unclassified) ++ext_uncl;
        if (rec.zero_coords.size() == 1) ++ext_onezero;
      }
      if (check_infinity_nonsingular(inst, 2).ok) ++ext_inf;
      if (check_pcl_no_singular_at_infinity(inst, 2).ok) ++ext_pcl;
      ++ext_probed;
    }
    const bool a_ok = probed >= 50 && unclassified == 0 && ext_uncl == 0 &&
                      ext_probed >= 5;
    const bool b_ok = one_zero == 0 && ext_onezero == 0;
    const bool c_ok = inf_ok == probed && ext_inf == ext_probed;
    const bool d_ok = pcl_ok_count == probed && ext_pcl == ext_probed;
    {
      std::ostringstream d;
      d << "zero UNCLASSIFIED records across " << probed << " r=1 and "
        << ext_probed << " r=2 probes";
      h.report("7a singular-classification", a_ok, d.str());
    }
    h.report("7b no-single-zero-coordinate", b_ok,
             "no singular point has exactly one vanishing coordinate");
    {
      std::ostringstream d;
      d << "diagonal infinity variety nonsingular on " << inf_ok << "/"
        << probed << " (r=1) and " << ext_inf << "/" << ext_probed << " (r=2)";
      h.report("7c infinity-nonsingular", c_ok, d.str());
    }
    {
      std::ostringstream d;
      d << pcl_ok_count << "/" << probed
        << " instances have no rational singular point at infinity on the "
           "projective closure; the top-degree form of f is a k-th power, so "
           "for mk > n+1 the full gradient of f^h vanishes on the entire "
           "infinity locus and the check cannot hold";
      h.report("7d pcl-no-singular-at-infinity", d_ok, d.str());
    }
  }

  // ---- criterion 8: existence thresholds and proof chain ---------------
  {
    const bool t1 = existence_threshold(3, 3, 2).threshold == 167961600;
    const bool t2 = existence_threshold(5, 2, 3).threshold ==
                    BigInt("208111140864");  // 484 * 12^8
    bool chain = true;
    std::uint64_t n5 = 0;
    for (const auto& r : all) {
      if (r.n < 5) continue;
      ++n5;
      chain = chain && r.exist_chain_ok && *r.exist_chain_ok;
    }
    bool exist_pass = true;
    for (const auto& r : all)
      exist_pass = exist_pass && (!r.v_exist.hypothesis_ok || r.v_exist.pass);
    std::ostringstream d;
    d << "thresholds 167961600 and 484*12^8 exact: "
      << (t1 && t2 ? "yes" : "no") << "; lower-bound chain holds on " << n5
      << " instances with n >= 5";
    h.report("8 existence-thresholds", t1 && t2 && chain && exist_pass && n5 > 0,
             d.str());
  }

  // ---- criterion 9: determinism and round-trip -------------------------
  {
    SweepSpec spec;
    spec.primes = {5, 7};
    spec.extensions = {1};
    spec.n_range = {3, 4};
    spec.m_range = {2, 3};
    spec.k_range = {2, 2};
    spec.coeff_mode = CoeffMode::Random;
    spec.random_count = 2;
    spec.seed = 424242;
    spec.run_probes = false;
    spec.workers = 3;
    std::ostringstream csv_a, csv_b;
    const auto out_a = run_sweep(spec);
    write_csv(csv_a, out_a.results);
    const auto out_b = run_sweep(spec);
    write_csv(csv_b, out_b.results);
    bool reparse_ok = !out_a.results.empty();
    {
      std::istringstream is(csv_a.str());
      std::string line;
      std::getline(is, line);
      reparse_ok = reparse_ok && line == csv_header();
      std::size_t row = 0;
      while (std::getline(is, line)) {
        const auto cells = split(line, ',');
        const auto& r = out_a.results[row];
        reparse_ok = reparse_ok && cells.size() == 24 &&
                     std::stoull(cells[2]) == r.q &&
                     std::stoull(cells[10]) == r.counts.N &&
                     std::stoull(cells[11]) == r.counts.N_star_direct &&
                     BigInt(cells[12]) == r.main_N &&
                     BigInt(cells[14]) == BigInt(r.counts.N) - r.main_N &&
                     BigInt(cells[22]) == r.threshold;
        ++row;
      }
      reparse_ok = reparse_ok && row == out_a.results.size();
    }
    std::ostringstream d;
    d << "two runs, seed 424242: " << out_a.results.size()
      << " rows, byte-identical: " << (csv_a.str() == csv_b.str() ? "yes" : "no")
      << ", integer fields re-parse exactly: " << (reparse_ok ? "yes" : "no");
    h.report("9 determinism-roundtrip",
             csv_a.str() == csv_b.str() && reparse_ok, d.str());
  }

  // ---- criterion 10: fast counter speedup ------------------------------
  {
    const auto inst = Instance::create(Field::build(11, 2), 4, 2, 3,
                                       {1, 1, 1, 1}, 1, 1);
    CountOptions opts;
    opts.budgets.naive_evals = 300'000'000;  // 121^4 needs 2.15e8
    opts.workers = 1;
    const auto t_fast = Clock::now();
    const auto n_fast = count_fast(inst, opts);
    const double fast_secs = secs_since(t_fast);
    const auto t_naive = Clock::now();
    const auto n_naive = count_naive(inst, opts);
    const double naive_secs = secs_since(t_naive);
    const double ratio = fast_secs > 0 ? naive_secs / fast_secs : 1e9;
    std::ostringstream d;
    d << "q=121, n=4: naive " << naive_secs << " s, fast " << fast_secs
      << " s, speedup " << ratio << "x, counts "
      << (n_fast == n_naive ? "agree" : "DISAGREE");
    h.report("10 fast-counter-speedup", n_fast == n_naive && ratio >= 20.0,
             d.str());
  }

  std::printf("acceptance: %d criterion(s) failed, total wall time %.1f s\n",
              h.failures, secs_since(t_total));
  return h.failures;
}
