#include "mhcount/bounds.hpp"

#include <cassert>

#include "mhcount/errors.hpp"

namespace mhcount {

const char* bound_name_str(BoundName name) {
  switch (name) {
    case BoundName::theorem_4_1: return "theorem_4_1";
    case BoundName::prop_4_1_diag: return "prop_4_1_diag";
    case BoundName::pcl_bound: return "pcl_bound";
    case BoundName::infinity_deligne: return "infinity_deligne";
    case BoundName::prop_4_5_nstar: return "prop_4_5_nstar";
    case BoundName::prop_4_6_existence: return "prop_4_6_existence";
  }
  return "?";
}

bool leq_bound(const BigInt& x, const SqrtBound& b) {
  if (x <= b.u) return true;
  const BigInt d = x - b.u;
  return d * d <= b.v * b.v * b.q;
}

BigInt floor_square(const SqrtBound& b) {
  // (u + v sqrt(q))^2 = u^2 + v^2 q + 2uv sqrt(q); floor the cross term.
  return b.u * b.u + b.v * b.v * b.q + isqrt(4 * b.u * b.u * b.v * b.v * b.q);
}

BigInt projective_space_size(const BigInt& q, unsigned r) {
  BigInt acc = 0, pw = 1;
  for (unsigned i = 0; i <= r; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

namespace {

BigInt abs_diff(const BigInt& a, const BigInt& b) { return a >= b ? a - b : b - a; }

void require_n3(const Instance& inst) {
  if (inst.n() < 3) throw Error("bounds: the estimates are stated for n >= 3");
}

// Assembles a verdict for |error| <= u + v sqrt(q); the caller may have
// scaled both sides by a common factor.
BoundVerdict make_verdict(BoundName name, const BigInt& err, const SqrtBound& B,
                          bool hypothesis_ok) {
  BoundVerdict v;
  v.name = name;
  v.lhs_sq = err * err;
  v.rhs_sq = floor_square(B);
  v.pass = leq_bound(err, B);
  assert(v.pass == (v.lhs_sq <= v.rhs_sq));
  v.tightness = tightness_ratio(v.lhs_sq, v.rhs_sq);
  v.hypothesis_ok = hypothesis_ok;
  return v;
}

// q^{e/2} as (integer part, sqrt-of-q multiplier): e even -> (q^{e/2}, 0)
// contribution, e odd -> q^{(e-1)/2} sqrt(q).
void add_half_power(SqrtBound& B, const BigInt& coef, unsigned e) {
  if (e % 2 == 0)
    B.u += coef * big_pow(B.q, e / 2);
  else
    B.v += coef * big_pow(B.q, (e - 1) / 2);
}

}  // namespace

BoundVerdict verdict_theorem_main(const Instance& inst, std::uint64_t N) {
  require_n3(inst);
  const BigInt q = inst.field().q();
  const unsigned n = inst.n();
  const BigInt main_term = big_pow(q, n - 1);
  const BigInt err = abs_diff(BigInt(N), main_term);
  const unsigned e = std::max(n - 1, 4u);
  SqrtBound B{0, 0, q};
  // 9 (mk)^e q^{n-3/2} = 9 (mk)^e q^{n-2} sqrt(q)
  add_half_power(B, 9 * big_pow(BigInt(inst.mk()), e), 2 * n - 3);
  return make_verdict(BoundName::theorem_4_1, err, B, inst.hypotheses_ok());
}

BoundVerdict verdict_diagonal(const Instance& inst, unsigned i, std::uint64_t Ni) {
  const unsigned n = inst.n();
  if (i < 1 || i > n - 1) throw Error("bounds: diagonal level out of range");
  const BigInt q = inst.field().q();
  const unsigned t = n - i;  // surviving variables
  const BigInt err = abs_diff(BigInt(Ni), big_pow(q, t - 1));
  const BigInt A = big_pow(BigInt(inst.m()) - 1, t);

  // Scale both sides by q: E q <= (m-1)^t (q^{t/2} + q^{(t+1)/2}); this keeps
  // every exponent nonnegative for t = 1 (where the written bound has q^{-1/2}).
  SqrtBound B{0, 0, q};
  add_half_power(B, A, t);
  add_half_power(B, A, t + 1);
  BoundVerdict v = make_verdict(BoundName::prop_4_1_diag, err * q, B,
                                inst.hypotheses_ok());

  // Implied form E <= 2 m^t q^{(t-1)/2}.
  SqrtBound S{0, 0, q};
  add_half_power(S, 2 * big_pow(BigInt(inst.m()), t), t - 1);
  v.secondary_pass = leq_bound(err, S);
  return v;
}

BigInt nstar_main_term(const BigInt& q, unsigned n) {
  const BigInt sign = (n % 2 == 0) ? 1 : -1;
  const BigInt num = big_pow(q - 1, n) - sign;
  if (num % q != 0)
    throw Error("bounds: internal error, N* main term not integral");
  return num / q;
}

BoundVerdict verdict_nstar(const Instance& inst, std::uint64_t N_star) {
  require_n3(inst);
  const BigInt q = inst.field().q();
  const unsigned n = inst.n();
  const BigInt err = abs_diff(BigInt(N_star), nstar_main_term(q, n));
  const BigInt mk = inst.mk();
  SqrtBound B{0, 0, q};
  if (n <= 3)
    add_half_power(B, 10 * big_pow(mk, 4), 3);  // 10 (mk)^4 q^{3/2}
  else if (n == 4)
    add_half_power(B, 10 * big_pow(mk, 4), 5);  // 10 (mk)^4 q^{5/2}
  else
    add_half_power(B, 11 * big_pow(mk, n - 1), 2 * n - 3);
  const bool hyp = inst.hypotheses_ok() && inst.gcd_m_q1() == 1;
  return make_verdict(BoundName::prop_4_5_nstar, err, B, hyp);
}

BoundVerdict verdict_pcl(const Instance& inst, std::uint64_t pcl_count) {
  require_n3(inst);
  const BigInt q = inst.field().q();
  const unsigned n = inst.n();
  const BigInt err = abs_diff(BigInt(pcl_count), projective_space_size(q, n - 1));
  const BigInt mk = inst.mk();
  SqrtBound B{0, 0, q};
  add_half_power(B, (mk - 1) * (mk - 2), 2 * n - 3);          // (mk-1)(mk-2) q^{n-3/2}
  add_half_power(B, 14 * big_pow(mk - 1, 2) * mk * mk, 2 * n - 4);
  return make_verdict(BoundName::pcl_bound, err, B, inst.hypotheses_ok());
}

BoundVerdict verdict_infinity(const Instance& inst, std::uint64_t v_infinity) {
  require_n3(inst);
  const BigInt q = inst.field().q();
  const unsigned n = inst.n();
  const BigInt err =
      abs_diff(BigInt(v_infinity), projective_space_size(q, n - 2));
  SqrtBound B{0, 0, q};
  add_half_power(B, big_pow(BigInt(inst.mk()) - 1, n - 1), n - 2);
  return make_verdict(BoundName::infinity_deligne, err, B, inst.hypotheses_ok());
}

bool infinity_sharper_pass(const Instance& inst, std::uint64_t v_infinity) {
  const BigInt q = inst.field().q();
  const unsigned n = inst.n();
  const BigInt err =
      abs_diff(BigInt(v_infinity), projective_space_size(q, n - 2));
  SqrtBound B{0, 0, q};
  add_half_power(B, big_pow(BigInt(inst.m()) - 1, n - 1), n - 2);
  return leq_bound(err, B);
}

ExistenceThreshold existence_threshold(unsigned n, std::uint64_t m,
                                       std::uint64_t k) {
  if (n < 3) throw Error("bounds: existence threshold needs n >= 3");
  ExistenceThreshold t{n, m, k, 0};
  const BigInt mk = BigInt(m) * k;
  if (n >= 5)
    t.threshold = 484 * big_pow(2 * mk, 2 * n - 2);
  else
    t.threshold = 100 * big_pow(mk, 8);
  return t;
}

BoundVerdict verdict_existence(const Instance& inst, std::uint64_t N_star) {
  const auto th = existence_threshold(inst.n(), inst.m(), inst.k());
  BoundVerdict v;
  v.name = BoundName::prop_4_6_existence;
  v.lhs_sq = N_star == 0 ? BigInt(inst.field().q()) : BigInt(0);
  v.rhs_sq = th.threshold;
  v.pass = v.lhs_sq <= v.rhs_sq;
  v.tightness = tightness_ratio(v.lhs_sq, v.rhs_sq);
  v.hypothesis_ok = inst.hypotheses_ok() && inst.gcd_m_q1() == 1;
  return v;
}

bool existence_chain_holds(const Instance& inst, std::uint64_t N_star) {
  const unsigned n = inst.n();
  if (n < 5) throw Error("bounds: existence chain is stated for n >= 5");
  const BigInt q = inst.field().q();
  // N* q >= (q-2)^n - 11 (mk)^{n-1} q^{n-1} sqrt(q)
  const BigInt target = big_pow(q - 2, n);
  SqrtBound B{BigInt(N_star) * q, 11 * big_pow(BigInt(inst.mk()), n - 1) *
                                      big_pow(q, n - 1), q};
  return leq_bound(target, B);
}

bool identity_p1(const BigInt& q, unsigned n) {
  if (q < 2 || n < 1) throw Error("bounds: identity needs q >= 2, n >= 1");
  // Truncated sum vs ((q-1)^n - (-1)^n)/q + (-1)^n n.
  BigInt lhs = 0;
  for (unsigned i = 0; i + 2 <= n; ++i) {
    const BigInt term = binomial(n, i) * big_pow(q, n - i - 1);
    lhs += (i % 2 == 0) ? term : -term;
  }
  const BigInt sign = (n % 2 == 0) ? 1 : -1;
  const BigInt num = big_pow(q - 1, n) - sign;
  if (num % q != 0) return false;
  const BigInt rhs = num / q + sign * n;
  if (lhs != rhs) return false;

  // Full identity, scaled by q to stay in integers:
  // sum_{i=0}^{n} (-1)^i C(n,i) q^{n-i} = (q-1)^n.
  BigInt full = 0;
  for (unsigned i = 0; i <= n; ++i) {
    const BigInt term = binomial(n, i) * big_pow(q, n - i);
    full += (i % 2 == 0) ? term : -term;
  }
  return full == big_pow(q - 1, n);
}

BettiBound betti_upper(unsigned n, const BigInt& d) {
  if (d < 2) throw Error("bounds: degree must be >= 2");
  BettiBound b;
  const BigInt sign = (n % 2 == 0) ? 1 : -1;
  const BigInt num = (d - 1) * (big_pow(d - 1, n) - sign);
  b.intermediate = num / d + (num % d != 0 ? 1 : 0);  // ceiling, num >= 0
  b.coarse = big_pow(d - 1, n);
  return b;
}

std::string tightness_ratio(const BigInt& lhs_sq, const BigInt& rhs_sq) {
  if (rhs_sq == 0) return lhs_sq == 0 ? "0" : "inf";
  if (lhs_sq == 0) return "0";
  // ratio = sqrt(lhs/rhs) scaled by 10^12, then truncated to 6 significant
  // digits; everything is integer arithmetic, so the string is reproducible.
  static const BigInt scale_sq = big_pow(BigInt(10), 24);
  const BigInt r = isqrt(lhs_sq * scale_sq / rhs_sq);
  if (r == 0) return "0";
  std::string digits = r.str();
  const int point = static_cast<int>(digits.size()) - 12;  // digits before '.'
  std::string sig = digits.substr(0, 6);
  while (sig.size() < 6) sig += '0';
  std::string out;
  if (point <= 0) {
    out = "0.";
    for (int i = 0; i < -point; ++i) out += '0';
    out += sig;
  } else if (point >= 6) {
    out = sig;
    for (int i = 0; i < point - 6; ++i) out += '0';
  } else {
    out = digits.substr(0, point) + "." + sig.substr(point);
  }
  return out;
}

}  // namespace mhcount
