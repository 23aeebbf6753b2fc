#include "mhcount/field.hpp"

#include <algorithm>
#include <numeric>

#include "mhcount/errors.hpp"

namespace mhcount {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Construction-time polynomial arithmetic over Z_p, coefficients ascending.
using PVec = std::vector<std::uint32_t>;

void ptrim(PVec& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g in place; g monic, deg g >= 1.
PVec pmod(PVec f, const PVec& g, std::uint32_t p) {
  ptrim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    if (lead != 0) {
      for (std::size_t j = 0; j < dg; ++j) {
        std::uint64_t t = f[shift + j] + static_cast<std::uint64_t>(p) * p -
                          lead * g[j] % p;
        f[shift + j] = static_cast<std::uint32_t>(t % p);
      }
    }
    f.pop_back();
    ptrim(f);
    if (f.size() <= dg) break;
  }
  return f;
}

PVec pmul(const PVec& a, const PVec& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PVec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  ptrim(out);
  return out;
}

bool is_zero_mod(const PVec& f, const PVec& g, std::uint32_t p) {
  return pmod(f, g, p).empty();
}

// Trial division by every monic polynomial of degree 1..s/2.
bool irreducible(const PVec& f, std::uint32_t p, std::uint32_t s) {
  for (std::uint32_t d = 1; 2 * d <= s; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PVec div(d + 1, 0);
      div[d] = 1;
      std::uint64_t t = idx;
      for (std::uint32_t j = 0; j < d; ++j) {
        div[j] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (is_zero_mod(f, div, p)) return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const Field> Field::build(std::uint32_t p, std::uint32_t s,
                                          std::uint64_t max_q) {
  if (!is_prime(p)) throw Error("field: p = " + std::to_string(p) + " is not prime");
  if (s < 1) throw Error("field: extension degree must be >= 1");

  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    q64 *= p;
    if (q64 > max_q)
      throw BudgetError("field: q = p^s exceeds budget " + std::to_string(max_q));
  }
  const auto q = static_cast<std::uint32_t>(q64);

  auto fld = std::shared_ptr<Field>(new Field());
  Field& F = *fld;
  F.p_ = p;
  F.s_ = s;
  F.q_ = q;

  // Lexicographically smallest monic irreducible modulus; the constant
  // coefficient is the most significant in the comparison, so the highest
  // base-p digit of the candidate index maps to the constant term.
  {
    for (std::uint64_t idx = 0; idx < q64; ++idx) {
      PVec cand(s + 1, 0);
      cand[s] = 1;
      std::uint64_t t = idx;
      for (std::uint32_t j = s; j-- > 0;) {
        cand[j] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (irreducible(cand, p, s)) {
        F.modulus_ = cand;
        break;
      }
    }
    if (F.modulus_.empty()) throw Error("field: internal error, no irreducible found");
  }

  const auto code_of = [&](const PVec& f) {
    Elt c = 0;
    for (std::size_t j = f.size(); j-- > 0;) c = c * p + f[j];
    return c;
  };
  const auto vec_of = [&](Elt a) {
    PVec f;
    while (a) {
      f.push_back(a % p);
      a /= p;
    }
    return f;
  };
  const auto raw_mul = [&](Elt a, Elt b) {
    return code_of(pmod(pmul(vec_of(a), vec_of(b), p), F.modulus_, p));
  };
  const auto raw_pow = [&](Elt a, std::uint64_t e) {
    Elt r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  // q-1 factored by trial division.
  {
    std::uint64_t n = q - 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        F.q1_primes_.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) F.q1_primes_.push_back(n);
  }

  // Smallest-code element of order exactly q-1.
  {
    const std::uint64_t qm1 = q - 1;
    for (Elt c = 1; c < q; ++c) {
      bool ok = true;
      for (std::uint64_t ell : F.q1_primes_) {
        if (raw_pow(c, qm1 / ell) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        F.gen_ = c;
        break;
      }
    }
    if (F.gen_ == 0) throw Error("field: internal error, no generator found");
  }

  // Eager exp/dlog tables; exp_ doubled so mul needs no modular reduction.
  {
    const std::uint32_t qm1 = q - 1;
    F.exp_.assign(2 * static_cast<std::size_t>(qm1), 0);
    F.dlog_.assign(q, qm1);  // sentinel for 0
    Elt cur = 1;
    for (std::uint32_t e = 0; e < qm1; ++e) {
      F.exp_[e] = cur;
      if (F.dlog_[cur] != qm1)
        throw Error("field: internal error, generator order < q-1");
      F.dlog_[cur] = e;
      cur = raw_mul(cur, F.gen_);
    }
    if (cur != 1) throw Error("field: internal error, generator order mismatch");
    for (std::uint32_t e = 0; e < qm1; ++e) F.exp_[qm1 + e] = F.exp_[e];
  }

  return fld;
}

Elt Field::add_ext(Elt a, Elt b) const {
  Elt out = 0, place = 1;
  for (std::uint32_t j = 0; j < s_; ++j) {
    std::uint32_t t = a % p_ + b % p_;
    if (t >= p_) t -= p_;
    out += t * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elt Field::sub_ext(Elt a, Elt b) const {
  Elt out = 0, place = 1;
  for (std::uint32_t j = 0; j < s_; ++j) {
    std::uint32_t t = a % p_ + p_ - b % p_;
    if (t >= p_) t -= p_;
    out += t * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw Error("field: inversion of zero");
  const std::uint32_t d = dlog_[a];
  return d == 0 ? 1 : exp_[q_ - 1 - d];
}

Elt Field::pow(Elt a, std::uint64_t e) const {
  Elt r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt Field::pow(Elt a, const BigInt& e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t red =
      static_cast<std::uint64_t>(e % BigInt(q_ - 1));  // Lagrange
  return pow(a, red);
}

std::vector<Elt> Field::enumerate() const {
  std::vector<Elt> out(q_);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

std::vector<std::uint32_t> Field::coeffs(Elt a) const {
  std::vector<std::uint32_t> out(s_);
  for (std::uint32_t j = 0; j < s_; ++j) {
    out[j] = a % p_;
    a /= p_;
  }
  return out;
}

Elt Field::from_coeffs(std::span<const std::uint32_t> c) const {
  Elt out = 0;
  for (std::size_t j = c.size(); j-- > 0;) {
    if (c[j] >= p_) throw Error("field: coefficient out of range");
    out = out * p_ + c[j];
  }
  return out;
}

std::uint32_t Field::mth_power_root_count(std::uint64_t m, Elt v) const {
  if (m < 1) throw Error("field: m must be >= 1");
  if (v == 0) return 1;
  const std::uint64_t d = std::gcd(m, static_cast<std::uint64_t>(q_ - 1));
  return dlog_[v] % d == 0 ? static_cast<std::uint32_t>(d) : 0;
}

}  // namespace mhcount
