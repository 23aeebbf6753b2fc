#include "mhcount/counting.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "mhcount/bigint.hpp"
#include "mhcount/errors.hpp"
#include "mhcount/unipoly.hpp"

namespace mhcount {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Elt> power_table(const Field& F, std::uint64_t e) {
  std::vector<Elt> out(F.q());
  for (Elt x = 0; x < F.q(); ++x) out[x] = F.pow(x, e);
  return out;
}

// a_i x^m lookup tables for the first `count` coefficients.
std::vector<std::vector<Elt>> axm_tables(const Instance& inst, unsigned count) {
  const Field& F = inst.field();
  const auto pw = power_table(F, inst.m());
  std::vector<std::vector<Elt>> out(count);
  for (unsigned i = 0; i < count; ++i) {
    out[i].resize(F.q());
    for (Elt x = 0; x < F.q(); ++x) out[i][x] = F.mul(inst.coeffs()[i], pw[x]);
  }
  return out;
}

// Runs fn(x1_lo, x1_hi) over a static partition of [x1_begin, q) and sums the
// partial counts in chunk order; the result does not depend on the partition.
template <typename Fn>
std::uint64_t partitioned_sum(std::uint32_t x1_begin, std::uint32_t q,
                              unsigned workers, Fn&& fn) {
  const std::uint32_t span = q - x1_begin;
  if (workers <= 1 || span < 2) return fn(x1_begin, q);
  if (workers > span) workers = span;
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint32_t lo = x1_begin + static_cast<std::uint32_t>(
                                 static_cast<std::uint64_t>(span) * w / workers);
    const std::uint32_t hi = x1_begin + static_cast<std::uint32_t>(
                                 static_cast<std::uint64_t>(span) * (w + 1) / workers);
    threads.emplace_back([&, w, lo, hi] { partial[w] = fn(lo, hi); });
  }
  for (auto& t : threads) t.join();
  std::uint64_t total = 0;
  for (std::uint64_t v : partial) total += v;
  return total;
}

// Memoized root counter over the univariate specializations P_{C,D}.
class FastCounter {
 public:
  FastCounter(const Instance& inst, const CountOptions& opts)
      : inst_(inst), F_(inst.field()), opts_(opts) {
    const unsigned n = inst.n();
    if (n < 2) throw Error("counting: fast counter needs n >= 2");
    const std::uint64_t mk = inst.mk();
    if (mk > 4096) throw BudgetError("counting: mk too large for fast counter");
    const std::uint64_t prefixes =
        pow_capped(F_.q(), n - 1, opts.budgets.fast_prefixes);
    if (prefixes > opts.budgets.fast_prefixes)
      throw BudgetError("counting: q^(n-1) exceeds fast-prefix budget");

    axm_ = axm_tables(inst, n - 1);
    const Elt an = inst.coeffs()[n - 1];
    bc_.resize(inst.k() + 1);
    for (std::uint64_t j = 0; j <= inst.k(); ++j) {
      const auto cmod = static_cast<std::int64_t>(
          binomial(inst.k(), j) % BigInt(F_.p()));
      bc_[j] = F_.mul(F_.from_int(cmod), F_.pow(an, j));
    }
    // For n >= 3 the (C, D) table is no larger than the prefix budget.
    const std::uint64_t pairs = static_cast<std::uint64_t>(F_.q()) * F_.q();
    use_memo_ = pairs <= std::max<std::uint64_t>(opts.budgets.fast_prefixes,
                                                 std::uint64_t{1} << 26);
    if (use_memo_) memo_.assign(pairs, -1);
  }

  std::uint64_t count_all() { return run(false); }
  std::uint64_t count_nonzero() { return run(true); }

 private:
  std::int32_t compute_roots(Elt C, Elt D) const {
    // P(X) = (C + a_n X^m)^k - D X, coefficient at X^{mj} is bc[j] C^{k-j}.
    const std::uint64_t m = inst_.m(), k = inst_.k();
    Poly P(m * k + 1, 0);
    std::vector<Elt> cpow(k + 1);
    cpow[0] = 1;
    for (std::uint64_t j = 1; j <= k; ++j) cpow[j] = F_.mul(cpow[j - 1], C);
    for (std::uint64_t j = 0; j <= k; ++j)
      P[m * j] = F_.add(P[m * j], F_.mul(bc_[j], cpow[k - j]));
    P[1] = F_.sub(P[1], D);
    P = poly_trim(std::move(P));
    return P.empty() ? static_cast<std::int32_t>(F_.q())
                     : distinct_root_count(F_, P);
  }

  std::int32_t roots(Elt C, Elt D) {
    if (!use_memo_) return compute_roots(C, D);
    const std::size_t idx = static_cast<std::size_t>(C) * F_.q() + D;
    std::atomic_ref<std::int32_t> slot(memo_[idx]);
    std::int32_t v = slot.load(std::memory_order_relaxed);
    if (v >= 0) return v;
    v = compute_roots(C, D);
    slot.store(v, std::memory_order_relaxed);
    return v;
  }

  std::uint64_t run(bool nonzero) {
    const unsigned last = inst_.n() - 1;  // prefix length
    const Elt a = inst_.a(), b = inst_.b();
    const std::uint32_t q = F_.q();
    const Elt x_begin = nonzero ? 1 : 0;

    auto chunk = [&](std::uint32_t lo, std::uint32_t hi) -> std::uint64_t {
      std::uint64_t local = 0;
      auto dfs = [&](auto&& self, unsigned depth, Elt sum, Elt prod) -> void {
        if (depth == last) {
          const std::int32_t r = roots(sum, prod);
          local += static_cast<std::uint64_t>(r) -
                   (nonzero && sum == 0 ? 1 : 0);
          return;
        }
        const auto& tab = axm_[depth];
        for (Elt x = x_begin; x < q; ++x)
          self(self, depth + 1, F_.add(sum, tab[x]), F_.mul(prod, x));
      };
      for (Elt x1 = lo; x1 < hi; ++x1) {
        if (nonzero && x1 == 0) continue;
        dfs(dfs, 1, F_.add(a, axm_[0][x1]), F_.mul(b, x1));
      }
      return local;
    };
    return partitioned_sum(x_begin, q, opts_.workers, chunk);
  }

  const Instance& inst_;
  const Field& F_;
  CountOptions opts_;
  std::vector<std::vector<Elt>> axm_;
  std::vector<Elt> bc_;
  bool use_memo_ = true;
  std::vector<std::int32_t> memo_;
};

std::vector<std::uint64_t> all_level_counts(const Instance& inst) {
  std::vector<std::uint64_t> Ni(inst.n());
  for (unsigned i = 1; i <= inst.n(); ++i) Ni[i - 1] = count_Ni(inst, i);
  return Ni;
}

// Sampled zero-pattern symmetry assertion: per level, the rotate-by-one and
// trailing subsets must reproduce the canonical (leading-coordinates) value.
void assert_zero_pattern_symmetry(const Instance& inst,
                                  std::span<const std::uint64_t> Ni) {
  const unsigned n = inst.n();
  for (unsigned i = 1; i <= n - 1; ++i) {
    std::vector<std::vector<unsigned>> samples;
    {
      std::vector<unsigned> rot(i);
      for (unsigned j = 0; j < i; ++j) rot[j] = j + 1;
      if (rot.back() < n) samples.push_back(rot);
    }
    {
      std::vector<unsigned> tail(i);
      for (unsigned j = 0; j < i; ++j) tail[j] = n - i + j;
      if (tail.front() != 0) samples.push_back(tail);
    }
    for (const auto& sub : samples) {
      const std::uint64_t v = count_Ni_subset(inst, sub);
      if (v != Ni[i - 1]) {
        std::string which = "{";
        for (unsigned j : sub) which += std::to_string(j + 1) + ",";
        which.back() = '}';
        throw AsymmetryError(
            "counting: zero-pattern count at level " + std::to_string(i) +
            " depends on the vanishing set: canonical " +
            std::to_string(Ni[i - 1]) + " vs " + std::to_string(v) +
            " for coordinates " + which);
      }
    }
  }
}

std::uint64_t ie_from_levels(const Instance& inst, std::uint64_t N,
                             std::span<const std::uint64_t> Ni) {
  assert_zero_pattern_symmetry(inst, Ni);
  BigInt neq = 0;
  for (unsigned i = 1; i <= inst.n(); ++i) {
    const BigInt term = binomial(inst.n(), i) * BigInt(Ni[i - 1]);
    if (i % 2 == 1)
      neq += term;
    else
      neq -= term;
  }
  const BigInt nstar = BigInt(N) - neq;
  if (nstar < 0 || nstar > BigInt(N))
    throw AsymmetryError("counting: inclusion-exclusion value out of range");
  return static_cast<std::uint64_t>(nstar);
}

}  // namespace

std::uint64_t pow_capped(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > cap / (base ? base : 1)) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

std::uint64_t count_naive(const Instance& inst, const CountOptions& opts) {
  const Field& F = inst.field();
  const unsigned n = inst.n();
  if (n < 1) throw Error("counting: n >= 1 required");
  const std::uint64_t points = pow_capped(F.q(), n, opts.budgets.naive_evals);
  if (points > opts.budgets.naive_evals)
    throw BudgetError("counting: q^n exceeds naive evaluation budget");

  const auto axm = axm_tables(inst, n);
  const auto gk = power_table(F, inst.k());
  const std::uint32_t q = F.q();
  const Elt a = inst.a(), b = inst.b();
  const unsigned last = n - 1;

  auto chunk = [&](std::uint32_t lo, std::uint32_t hi) -> std::uint64_t {
    std::uint64_t local = 0;
    const auto& tab_last = axm[last];
    auto dfs = [&](auto&& self, unsigned depth, Elt sum, Elt prod) -> void {
      if (depth == last) {
        for (Elt x = 0; x < q; ++x)
          local += gk[F.add(sum, tab_last[x])] == F.mul(prod, x);
        return;
      }
      const auto& tab = axm[depth];
      for (Elt x = 0; x < q; ++x)
        self(self, depth + 1, F.add(sum, tab[x]), F.mul(prod, x));
    };
    if (n == 1) {
      if (lo == 0) {
        for (Elt x = 0; x < q; ++x)
          local += gk[F.add(a, axm[0][x])] == F.mul(b, x);
      }
      return local;
    }
    for (Elt x1 = lo; x1 < hi; ++x1)
      dfs(dfs, 1, F.add(a, axm[0][x1]), F.mul(b, x1));
    return local;
  };
  return partitioned_sum(0, q, opts.workers, chunk);
}

std::uint64_t count_fast(const Instance& inst, const CountOptions& opts) {
  return FastCounter(inst, opts).count_all();
}

std::uint64_t count_nonzero_direct(const Instance& inst, const CountOptions& opts) {
  return FastCounter(inst, opts).count_nonzero();
}

ValueDistribution diagonal_distribution(const Field& F, Elt coeff,
                                        std::uint64_t m) {
  if (coeff == 0) throw Error("counting: diagonal coefficient must be nonzero");
  const Elt w = F.inv(coeff);
  ValueDistribution d;
  d.table.resize(F.q());
  for (Elt v = 0; v < F.q(); ++v)
    d.table[v] = F.mth_power_root_count(m, F.mul(w, v));
  d.total = F.q();
  return d;
}

ValueDistribution convolve(const Field& F, const ValueDistribution& A,
                           const ValueDistribution& B) {
  if (B.total != 0 && A.total > UINT64_MAX / B.total)
    throw Error("counting: distribution total overflow");
  ValueDistribution out;
  out.table.assign(F.q(), 0);
  out.total = A.total * B.total;
  for (Elt v = 0; v < F.q(); ++v) {
    if (A.table[v] == 0) continue;
    for (Elt w = 0; w < F.q(); ++w) {
      if (B.table[w] == 0) continue;
      out.table[F.add(v, w)] += A.table[v] * B.table[w];
    }
  }
  return out;
}

std::uint64_t count_diagonal(const Field& F, std::span<const Elt> coeffs,
                             std::uint64_t m, Elt rhs) {
  if (coeffs.empty()) throw Error("counting: diagonal needs coefficients");
  ValueDistribution acc = diagonal_distribution(F, coeffs[0], m);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    acc = convolve(F, acc, diagonal_distribution(F, coeffs[i], m));
  return acc.table[rhs];
}

std::uint64_t count_Ni(const Instance& inst, unsigned i) {
  const unsigned n = inst.n();
  if (i < 1 || i > n) throw Error("counting: level index out of range");
  if (i == n) return inst.a() != 0 ? 0 : 1;
  const Field& F = inst.field();
  std::span<const Elt> tail(inst.coeffs().data() + i, n - i);
  return count_diagonal(F, tail, inst.m(), F.neg(inst.a()));
}

std::uint64_t count_Ni_subset(const Instance& inst,
                              std::span<const unsigned> zero_idx) {
  const unsigned n = inst.n();
  if (zero_idx.empty() || zero_idx.size() > n)
    throw Error("counting: bad zero-coordinate set");
  std::vector<bool> zero(n, false);
  for (unsigned j : zero_idx) {
    if (j >= n || zero[j]) throw Error("counting: bad zero-coordinate set");
    zero[j] = true;
  }
  if (zero_idx.size() == n) return inst.a() != 0 ? 0 : 1;
  std::vector<Elt> surv;
  for (unsigned j = 0; j < n; ++j)
    if (!zero[j]) surv.push_back(inst.coeffs()[j]);
  const Field& F = inst.field();
  return count_diagonal(F, surv, inst.m(), F.neg(inst.a()));
}

std::uint64_t count_nonzero_ie(const Instance& inst, const CountOptions& opts) {
  const std::uint64_t N = count_fast(inst, opts);
  const auto Ni = all_level_counts(inst);
  return ie_from_levels(inst, N, Ni);
}

std::uint64_t count_infinity(const Instance& inst) {
  const Field& F = inst.field();
  const std::uint64_t aff = count_diagonal(F, inst.coeffs(), inst.m(), 0);
  if (aff == 0 || (aff - 1) % (F.q() - 1) != 0)
    throw Error("counting: internal error, affine cone count not 1 mod q-1");
  return (aff - 1) / (F.q() - 1);
}

CountReport full_report(const Instance& inst, const CountOptions& opts) {
  CountReport r;
  FastCounter fc(inst, opts);

  auto t0 = Clock::now();
  r.N = fc.count_all();
  r.timing["fast"] = seconds_since(t0);

  t0 = Clock::now();
  r.N_star_direct = fc.count_nonzero();
  r.timing["nonzero_direct"] = seconds_since(t0);

  t0 = Clock::now();
  r.N_i = all_level_counts(inst);
  r.timing["levels"] = seconds_since(t0);

  t0 = Clock::now();
  try {
    r.N_star_ie = ie_from_levels(inst, r.N, r.N_i);
  } catch (const AsymmetryError& e) {
    r.symmetry_ok = false;
    r.symmetry_note = e.what();
  }
  r.timing["ie"] = seconds_since(t0);

  t0 = Clock::now();
  r.count_infinity = count_infinity(inst);
  r.timing["infinity"] = seconds_since(t0);

  r.count_pcl = count_pcl(r.N, r.count_infinity);
  r.N_eq = r.N - r.N_star_direct;
  return r;
}

}  // namespace mhcount
