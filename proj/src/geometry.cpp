#include "mhcount/geometry.hpp"

#include <algorithm>

#include "mhcount/errors.hpp"

namespace mhcount {

const char* sing_class_str(SingClass c) {
  switch (c) {
    case SingClass::TwoZerosVj: return "TWO_ZEROS_Vj";
    case SingClass::AllNonzeroW: return "ALL_NONZERO_W";
    case SingClass::Unclassified: return "UNCLASSIFIED";
  }
  return "?";
}

LiftedInstance lift_instance(const Instance& inst, unsigned r,
                             std::uint64_t max_q) {
  if (r < 1) throw Error("geometry: extension degree must be >= 1");
  if (r == 1) return {inst.field_ptr(), inst, 1};
  if (!inst.coeff_ints())
    throw Error("geometry: extension probe needs prime-subfield coefficients");
  const Field& F = inst.field();
  auto ext = Field::build(F.p(), F.s() * r, max_q);
  const auto& ints = *inst.coeff_ints();  // a_1..a_n, a, b as residues mod p
  std::vector<Elt> coeffs(ints.begin(), ints.begin() + inst.n());
  const Elt a = ints[inst.n()], b = ints[inst.n() + 1];
  Instance lifted = Instance::create(ext, inst.n(), inst.m(), inst.k(),
                                     std::move(coeffs), a, b, inst.strict());
  return {std::move(ext), std::move(lifted), r};
}

namespace {

// Visits every point of F^n in code order, maintaining the running g-sum and
// product; visit(x, g, prod) is called at each point with g = a + sum a_i x_i^m
// and prod = b x_1...x_n.
template <typename Visit>
void scan_points(const Instance& inst, Visit&& visit) {
  const Field& F = inst.field();
  const std::uint32_t q = F.q();
  const unsigned n = inst.n();
  std::vector<std::vector<Elt>> axm(n);
  for (unsigned i = 0; i < n; ++i) {
    axm[i].resize(q);
    for (Elt x = 0; x < q; ++x)
      axm[i][x] = F.mul(inst.coeffs()[i], F.pow(x, inst.m()));
  }
  std::vector<Elt> point(n, 0);
  auto dfs = [&](auto&& self, unsigned depth, Elt sum, Elt prod) -> void {
    if (depth == n) {
      visit(point, sum, prod);
      return;
    }
    for (Elt x = 0; x < q; ++x) {
      point[depth] = x;
      self(self, depth + 1, F.add(sum, axm[depth][x]), F.mul(prod, x));
    }
  };
  dfs(dfs, 0, inst.a(), inst.b());
}

SingularPointRecord classify(const Instance& inst, const std::vector<Elt>& x,
                             unsigned r) {
  const Field& F = inst.field();
  const unsigned n = inst.n();
  SingularPointRecord rec;
  rec.point = x;
  rec.ext_degree = r;
  for (unsigned i = 0; i < n; ++i)
    if (x[i] == 0) rec.zero_coords.push_back(i + 1);

  if (rec.zero_coords.size() >= 2) {
    const unsigned j = rec.zero_coords[0], l = rec.zero_coords[1];
    Elt s = inst.a();
    for (unsigned i = 0; i < n; ++i) {
      if (i + 1 == j || i + 1 == l) continue;
      s = F.add(s, F.mul(inst.coeffs()[i], F.pow(x[i], inst.m())));
    }
    if (s == 0) {
      rec.cls = SingClass::TwoZerosVj;
      rec.j = j;
      rec.l = l;
    }
  } else if (rec.zero_coords.empty() && n >= 3) {
    const std::uint64_t m = inst.m();
    const Elt a1x1 = F.mul(inst.coeffs()[0], F.pow(x[0], m));
    const std::int64_t nkm = static_cast<std::int64_t>(inst.n()) -
                             static_cast<std::int64_t>(inst.mk());
    const Elt w0 = F.add(F.mul(F.from_int(nkm), a1x1), inst.a());
    const bool w1 = a1x1 == F.mul(inst.coeffs()[1], F.pow(x[1], m));
    const bool w2 = a1x1 == F.mul(inst.coeffs()[2], F.pow(x[2], m));
    if (w0 == 0 && w1 && w2) rec.cls = SingClass::AllNonzeroW;
  }
  return rec;
}

// Visits the normalized representative of every point of P^{n-1}(F): for each
// pivot position the pivot coordinate is 1 and earlier ones are 0.
template <typename Visit>
void scan_projective(const Field& F, unsigned n, Visit&& visit) {
  const std::uint32_t q = F.q();
  std::vector<Elt> x(n, 0);
  for (unsigned pivot = 0; pivot < n; ++pivot) {
    std::fill(x.begin(), x.end(), 0);
    x[pivot] = 1;
    auto dfs = [&](auto&& self, unsigned depth) -> void {
      if (depth == n) {
        visit(x);
        return;
      }
      for (Elt v = 0; v < q; ++v) {
        x[depth] = v;
        self(self, depth + 1);
      }
    };
    dfs(dfs, pivot + 1);
  }
}

void check_probe_budget(const Field& F, unsigned n, unsigned r,
                        std::uint64_t budget) {
  const std::uint64_t pts = pow_capped(F.q(), n, budget);
  if (pts > budget)
    throw BudgetError("geometry: q^" + std::to_string(n) + " with r = " +
                      std::to_string(r) + " exceeds probe budget");
}

}  // namespace

std::vector<SingularPointRecord> enumerate_singular_points(
    const Instance& inst, unsigned r, const CountOptions& opts) {
  LiftedInstance L = lift_instance(inst, r);
  const Instance& I = L.inst;
  const Field& F = I.field();
  check_probe_budget(F, I.n(), r, opts.budgets.probe_points);

  const auto gk = [&] {
    std::vector<Elt> t(F.q());
    for (Elt v = 0; v < F.q(); ++v) t[v] = F.pow(v, I.k());
    return t;
  }();

  std::vector<SingularPointRecord> out;
  scan_points(I, [&](const std::vector<Elt>& x, Elt g, Elt prod) {
    if (gk[g] != prod) return;  // f(x) != 0
    const auto grad = I.eval_gradient(x);
    for (Elt c : grad)
      if (c != 0) return;
    out.push_back(classify(I, x, r));
  });
  std::sort(out.begin(), out.end(),
            [](const SingularPointRecord& a, const SingularPointRecord& b) {
              return a.point < b.point;
            });
  return out;
}

InfinityCheck check_infinity_nonsingular(const Instance& inst, unsigned r,
                                         const CountOptions& opts) {
  LiftedInstance L = lift_instance(inst, r);
  const Instance& I = L.inst;
  const Field& F = I.field();
  check_probe_budget(F, I.n() - 1, r, opts.budgets.probe_points);

  InfinityCheck result;
  const std::uint64_t m = I.m();
  scan_projective(F, I.n(), [&](const std::vector<Elt>& x) {
    Elt s = 0;
    for (unsigned i = 0; i < I.n(); ++i)
      s = F.add(s, F.mul(I.coeffs()[i], F.pow(x[i], m)));
    if (s != 0) return;
    ++result.points_on_variety;
    bool all_zero = true;
    const Elt mc = F.from_int(static_cast<std::int64_t>(m % F.p()));
    for (unsigned j = 0; j < I.n() && all_zero; ++j)
      all_zero = F.mul(mc, F.mul(I.coeffs()[j], F.pow(x[j], m - 1))) == 0;
    if (all_zero) {
      result.ok = false;
      ++result.violation_count;
      if (result.violations.size() < InfinityCheck::kMaxStored)
        result.violations.push_back(x);
    }
  });
  return result;
}

InfinityCheck check_pcl_no_singular_at_infinity(const Instance& inst, unsigned r,
                                                const CountOptions& opts) {
  LiftedInstance L = lift_instance(inst, r);
  const Instance& I = L.inst;
  const Field& F = I.field();
  check_probe_budget(F, I.n() - 1, r, opts.budgets.probe_points);

  InfinityCheck result;
  const std::uint64_t m = I.m();
  scan_projective(F, I.n(), [&](const std::vector<Elt>& x) {
    Elt s = 0;
    for (unsigned i = 0; i < I.n(); ++i)
      s = F.add(s, F.mul(I.coeffs()[i], F.pow(x[i], m)));
    if (s != 0) return;  // f^h(0, x) = s^k
    ++result.points_on_variety;
    const auto grad = I.eval_fh_gradient(0, x);
    bool all_zero = true;
    for (Elt c : grad) all_zero = all_zero && c == 0;
    if (all_zero) {
      result.ok = false;
      ++result.violation_count;
      if (result.violations.size() < InfinityCheck::kMaxStored)
        result.violations.push_back(x);
    }
  });
  return result;
}

}  // namespace mhcount
