#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhcount/counting.hpp"
#include "mhcount/errors.hpp"

using namespace mhcount;

namespace {

Instance canonical() {
  return Instance::create(Field::build(5, 1), 3, 3, 2, {1, 1, 1}, 1, 1);
}

// Plain integer brute force over prime fields, independent of the library's
// field arithmetic: the test-side oracle.
std::uint64_t oracle_count(std::uint32_t q, unsigned n, std::uint64_t m,
                           std::uint64_t k, const std::vector<std::uint32_t>& cs,
                           std::uint32_t a, std::uint32_t b, bool nonzero_only) {
  auto powm = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1 % q;
    x %= q;
    while (e) {
      if (e & 1) r = r * x % q;
      x = x * x % q;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::uint32_t> x(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool has_zero = false;
    std::uint64_t s = a % q, prod = b % q;
    for (unsigned i = 0; i < n; ++i) {
      if (x[i] == 0) has_zero = true;
      s = (s + std::uint64_t(cs[i]) * powm(x[i], m)) % q;
      prod = prod * x[i] % q;
    }
    if (!(nonzero_only && has_zero) && powm(s, k) == prod) ++count;
    unsigned i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("canonical instance: frozen oracle values") {
  const auto inst = canonical();
  // independently computed by exhaustive enumeration over 125 points
  CHECK(oracle_count(5, 3, 3, 2, {1, 1, 1}, 1, 1, false) == 26);
  CHECK(count_naive(inst) == 26);
  CHECK(count_fast(inst) == 26);
  CHECK(count_nonzero_direct(inst) == 14);
  CHECK(count_nonzero_ie(inst) == 14);
  CHECK(count_Ni(inst, 1) == 5);
  CHECK(count_Ni(inst, 2) == 1);
  CHECK(count_Ni(inst, 3) == 0);
  CHECK(count_infinity(inst) == 6);
  CHECK(count_pcl(26, 6) == 32);

  const auto rep = full_report(inst);
  CHECK(rep.N == 26);
  CHECK(rep.N_star_direct == 14);
  REQUIRE(rep.N_star_ie.has_value());
  CHECK(*rep.N_star_ie == 14);
  CHECK(rep.N_eq == 12);
  CHECK(rep.count_infinity == 6);
  CHECK(rep.count_pcl == rep.N + rep.count_infinity);
  CHECK(rep.symmetry_ok);
}

TEST_CASE("second frozen instance: q=7, m=2, k=2, all ones") {
  const auto inst = Instance::create(Field::build(7, 1), 3, 2, 2, {1, 1, 1}, 1, 1);
  CHECK(count_fast(inst) == 88);
  CHECK(count_naive(inst) == 88);
  CHECK(count_nonzero_direct(inst) == 64);
  CHECK(count_nonzero_ie(inst) == 64);  // symmetric: equal coefficients
  CHECK(count_Ni(inst, 1) == 8);
  CHECK(count_Ni(inst, 2) == 0);
  CHECK(count_infinity(inst) == 8);
}

TEST_CASE("fast counter equals naive oracle across fields and exponents") {
  struct Case {
    std::uint32_t p, s;
    unsigned n;
    std::uint64_t m, k;
    std::vector<Elt> cs;
    Elt a, b;
  };
  const std::vector<Case> cases = {
      {5, 1, 3, 3, 2, {1, 2, 3}, 4, 2},  {5, 1, 4, 3, 2, {1, 1, 2, 3}, 1, 1},
      {7, 1, 3, 2, 2, {1, 3, 5}, 2, 6},  {7, 1, 3, 4, 2, {2, 2, 2}, 1, 3},
      {11, 1, 3, 2, 2, {1, 5, 9}, 3, 7}, {13, 1, 3, 2, 2, {1, 1, 12}, 5, 2},
      {3, 1, 4, 5, 1, {1, 2, 1, 2}, 1, 1},  // k = 1, strict off
      {2, 1, 4, 3, 3, {1, 1, 1, 1}, 1, 1},
  };
  for (const auto& c : cases) {
    const auto inst = Instance::create(Field::build(c.p, c.s), c.n, c.m, c.k,
                                       c.cs, c.a, c.b, false);
    const auto naive = count_naive(inst);
    CHECK(count_fast(inst) == naive);
    std::vector<std::uint32_t> cs32(c.cs.begin(), c.cs.end());
    CHECK(naive == oracle_count(c.p, c.n, c.m, c.k, cs32, c.a, c.b, false));
    CHECK(count_nonzero_direct(inst) ==
          oracle_count(c.p, c.n, c.m, c.k, cs32, c.a, c.b, true));
  }
}

TEST_CASE("extension field counts agree with naive") {
  const auto i9 = Instance::create(Field::build(3, 2), 3, 4, 2, {1, 2, 4}, 3, 5);
  CHECK(count_fast(i9) == count_naive(i9));
  const auto i4 = Instance::create(Field::build(2, 2), 3, 3, 3, {1, 2, 3}, 1, 2);
  CHECK(count_fast(i4) == count_naive(i4));
  CHECK(count_nonzero_direct(i4) <= count_fast(i4));
}

TEST_CASE("counts are independent of the worker count") {
  const auto inst = Instance::create(Field::build(7, 1), 4, 3, 2, {1, 2, 3, 4}, 5, 6);
  CountOptions one{{}, 1}, four{{}, 4}, seven{{}, 7};
  const auto n1 = count_fast(inst, one);
  CHECK(count_fast(inst, four) == n1);
  CHECK(count_fast(inst, seven) == n1);
  CHECK(count_naive(inst, four) == n1);
  CHECK(count_nonzero_direct(inst, four) == count_nonzero_direct(inst, one));
}

TEST_CASE("budget errors") {
  const auto inst = canonical();
  CountOptions tiny;
  tiny.budgets.naive_evals = 10;
  CHECK_THROWS_AS(count_naive(inst, tiny), BudgetError);
  tiny.budgets.fast_prefixes = 3;
  CHECK_THROWS_AS(count_fast(inst, tiny), BudgetError);
}

TEST_CASE("diagonal distribution examples") {
  auto F5 = Field::build(5, 1);
  const auto d = diagonal_distribution(*F5, 1, 3);
  for (Elt v = 0; v < 5; ++v) CHECK(d.table[v] == 1);  // cubing is a bijection
  CHECK(d.total == 5);

  auto F7 = Field::build(7, 1);
  const auto sq = diagonal_distribution(*F7, 1, 2);
  CHECK(sq.table[0] == 1);
  CHECK(sq.table[1] == 2);
  CHECK(sq.table[2] == 2);
  CHECK(sq.table[4] == 2);
  CHECK(sq.table[3] == 0);
  std::uint64_t total = 0;
  for (auto c : sq.table) total += c;
  CHECK(total == 7);

  CHECK_THROWS_AS(diagonal_distribution(*F5, 0, 3), Error);
}

TEST_CASE("distribution totals multiply under convolution") {
  auto F = Field::build(7, 1);
  const auto a = diagonal_distribution(*F, 3, 2);
  const auto b = diagonal_distribution(*F, 5, 3);
  const auto c = convolve(*F, a, b);
  CHECK(c.total == a.total * b.total);
  std::uint64_t sum = 0;
  for (auto v : c.table) sum += v;
  CHECK(sum == c.total);
}

TEST_CASE("diagonal counts") {
  auto F5 = Field::build(5, 1);
  CHECK(count_diagonal(*F5, std::vector<Elt>{1, 1}, 3, F5->neg(1)) == 5);
  auto F7 = Field::build(7, 1);
  CHECK(count_diagonal(*F7, std::vector<Elt>{1}, 2, 4) == 2);

  // brute force cross-check over all fields q <= 49, up to 3 variables
  for (auto [p, s] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {7u, 1u},
                      {2u, 2u}, {3u, 2u}, {7u, 2u}, {2u, 4u}}) {
    auto F = Field::build(p, s);
    const std::vector<Elt> coefs{1, std::min<Elt>(2, F->q() - 1), 1};
    for (std::uint64_t m : {2, 3}) {
      for (unsigned t = 1; t <= 3; ++t) {
        std::span<const Elt> cs(coefs.data(), t);
        for (Elt rhs : {Elt(0), Elt(1), F->neg(1)}) {
          std::uint64_t brute = 0;
          std::vector<Elt> x(t, 0);
          for (;;) {
            Elt sum = 0;
            for (unsigned i = 0; i < t; ++i)
              sum = F->add(sum, F->mul(cs[i], F->pow(x[i], m)));
            if (sum == rhs) ++brute;
            unsigned i = 0;
            while (i < t && ++x[i] == F->q()) x[i++] = 0;
            if (i == t) break;
          }
          CHECK(count_diagonal(*F, cs, m, rhs) == brute);
        }
      }
    }
  }
}

TEST_CASE("level counts for bijective power maps") {
  // gcd(m, q-1) = 1: N_i = q^{n-i-1} for i <= n-1, and N_n = 0
  const auto inst = canonical();  // gcd(3, 4) = 1
  CHECK(count_Ni(inst, 1) == 5);  // q^{n-2}
  CHECK(count_Ni(inst, 2) == 1);  // unique m-th root
  CHECK(count_Ni(inst, 3) == 0);
  CHECK_THROWS_AS(count_Ni(inst, 0), Error);
  CHECK_THROWS_AS(count_Ni(inst, 4), Error);
}

TEST_CASE("subset counts match the tail value on symmetric instances") {
  const auto inst = canonical();
  const std::vector<unsigned> head{0}, mid{1}, pair01{0, 1}, pair12{1, 2};
  CHECK(count_Ni_subset(inst, head) == count_Ni(inst, 1));
  CHECK(count_Ni_subset(inst, mid) == count_Ni(inst, 1));
  CHECK(count_Ni_subset(inst, pair01) == count_Ni(inst, 2));
  CHECK(count_Ni_subset(inst, pair12) == count_Ni(inst, 2));
}

TEST_CASE("asymmetric zero patterns are detected, not silently used") {
  // q=5, m=2, k=2, coefficients (1,1,2): zeroing x_1 leaves {1,2} with 6
  // solutions, zeroing x_3 leaves {1,1} with 4; the paper-style formula
  // would give N* = 6 while the true count is 12.
  const auto inst =
      Instance::create(Field::build(5, 1), 3, 2, 2, {1, 1, 2}, 1, 1);
  CHECK(count_fast(inst) == 24);
  CHECK(count_nonzero_direct(inst) == 12);
  CHECK(count_Ni(inst, 1) == 6);
  const std::vector<unsigned> zero_x3{2};
  CHECK(count_Ni_subset(inst, zero_x3) == 4);
  CHECK_THROWS_AS(count_nonzero_ie(inst), AsymmetryError);

  const auto rep = full_report(inst);
  CHECK(rep.N == 24);
  CHECK(rep.N_star_direct == 12);
  CHECK_FALSE(rep.symmetry_ok);
  CHECK_FALSE(rep.N_star_ie.has_value());
  CHECK(rep.N_eq == 12);  // still exact: N - N*
}

TEST_CASE("infinity count consistency") {
  const auto inst = canonical();
  // brute force over 125 affine triples of the cone, then projectivize
  std::uint64_t affine = 0;
  for (Elt x = 0; x < 5; ++x)
    for (Elt y = 0; y < 5; ++y)
      for (Elt z = 0; z < 5; ++z)
        if ((x * x * x + y * y * y + z * z * z) % 5 == 0) ++affine;
  CHECK(affine == 25);
  CHECK(count_infinity(inst) == (affine - 1) / 4);
}

TEST_CASE("pow_capped saturates") {
  CHECK(pow_capped(10, 3, 10000) == 1000);
  CHECK(pow_capped(10, 5, 10000) == 10001);
  CHECK(pow_capped(2, 62, UINT64_MAX / 4) > UINT64_MAX / 8);
}
