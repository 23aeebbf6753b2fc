#include "mhcount/instance.hpp"

#include <numeric>
#include <sstream>

#include "mhcount/errors.hpp"

namespace mhcount {

Instance Instance::create(std::shared_ptr<const Field> field, unsigned n,
                          std::uint64_t m, std::uint64_t k,
                          std::vector<Elt> coeffs, Elt a, Elt b, bool strict) {
  if (!field) throw Error("instance: null field");
  if (n == 0) throw Error("instance: n must be positive");
  if (coeffs.size() != n)
    throw Error("instance: expected " + std::to_string(n) + " coefficients, got " +
                std::to_string(coeffs.size()));
  if (m == 0 || k == 0) throw Error("instance: m and k must be positive");
  if (m > (1u << 20) || k > (1u << 20)) throw Error("instance: m or k out of range");
  const std::uint32_t q = field->q();
  for (Elt c : coeffs)
    if (c >= q) throw Error("instance: coefficient code out of range");
  if (a >= q || b >= q) throw Error("instance: a or b out of range");

  Instance inst;
  inst.field_ = std::move(field);
  inst.n_ = n;
  inst.m_ = m;
  inst.k_ = k;
  inst.coeffs_ = std::move(coeffs);
  inst.a_ = a;
  inst.b_ = b;
  inst.strict_ = strict;

  auto& v = inst.violations_;
  if (n < 3) v.push_back("n >= 3 violated");
  if (m < 2) v.push_back("m >= 2 violated");
  if (k < 2) v.push_back("k >= 2 violated");
  bool all_nonzero = a != 0 && b != 0;
  for (Elt c : inst.coeffs_) all_nonzero = all_nonzero && c != 0;
  if (!all_nonzero) v.push_back("a, b, a_i nonzero violated");
  if ((m * k) % inst.field_->p() == 0) v.push_back("p does not divide mk violated");
  if (m * k <= n) v.push_back("mk > n violated");

  if (strict && !v.empty()) {
    std::string msg = "instance: hypothesis violation:";
    for (const auto& s : v) msg += " [" + s + "]";
    throw HypothesisError(msg);
  }

  const std::uint32_t p = inst.field_->p();
  bool prime_subfield = a < p && b < p;
  for (Elt c : inst.coeffs_) prime_subfield = prime_subfield && c < p;
  if (prime_subfield) {
    std::vector<std::uint32_t> ints(inst.coeffs_.begin(), inst.coeffs_.end());
    ints.push_back(a);
    ints.push_back(b);
    inst.coeff_ints_ = std::move(ints);
  }
  return inst;
}

std::uint64_t Instance::gcd_m_q1() const {
  return std::gcd(m_, static_cast<std::uint64_t>(field_->q() - 1));
}

Elt Instance::eval_g(std::span<const Elt> x) const {
  const Field& F = *field_;
  Elt acc = a_;
  for (unsigned i = 0; i < n_; ++i)
    acc = F.add(acc, F.mul(coeffs_[i], F.pow(x[i], m_)));
  return acc;
}

Elt Instance::eval_f(std::span<const Elt> x) const {
  const Field& F = *field_;
  Elt prod = b_;
  for (unsigned i = 0; i < n_; ++i) prod = F.mul(prod, x[i]);
  return F.sub(F.pow(eval_g(x), k_), prod);
}

std::vector<Elt> Instance::eval_gradient(std::span<const Elt> x) const {
  const Field& F = *field_;
  const Elt gk1 = F.pow(eval_g(x), k_ - 1);
  const Elt km = F.from_int(static_cast<std::int64_t>((k_ % F.p()) * (m_ % F.p())));

  // prefix[j] = x_0...x_{j-1}, suffix[j] = x_j...x_{n-1}
  std::vector<Elt> prefix(n_ + 1, 1), suffix(n_ + 1, 1);
  for (unsigned i = 0; i < n_; ++i) prefix[i + 1] = F.mul(prefix[i], x[i]);
  for (unsigned i = n_; i-- > 0;) suffix[i] = F.mul(suffix[i + 1], x[i]);

  std::vector<Elt> out(n_);
  for (unsigned j = 0; j < n_; ++j) {
    const Elt t1 = F.mul(F.mul(km, coeffs_[j]), F.mul(F.pow(x[j], m_ - 1), gk1));
    const Elt t2 = F.mul(b_, F.mul(prefix[j], suffix[j + 1]));
    out[j] = F.sub(t1, t2);
  }
  return out;
}

Elt Instance::eval_fh(Elt x0, std::span<const Elt> x) const {
  if (m_ * k_ < n_) throw Error("instance: homogenization requires mk >= n");
  const Field& F = *field_;
  Elt g = F.mul(a_, F.pow(x0, m_));
  for (unsigned i = 0; i < n_; ++i)
    g = F.add(g, F.mul(coeffs_[i], F.pow(x[i], m_)));
  Elt prod = F.mul(b_, F.pow(x0, m_ * k_ - n_));
  for (unsigned i = 0; i < n_; ++i) prod = F.mul(prod, x[i]);
  return F.sub(F.pow(g, k_), prod);
}

std::vector<Elt> Instance::eval_fh_gradient(Elt x0, std::span<const Elt> x) const {
  if (m_ * k_ < n_) throw Error("instance: homogenization requires mk >= n");
  const Field& F = *field_;
  const std::uint64_t d = m_ * k_ - n_;  // X_0 exponent in the product term
  Elt g = F.mul(a_, F.pow(x0, m_));
  for (unsigned i = 0; i < n_; ++i)
    g = F.add(g, F.mul(coeffs_[i], F.pow(x[i], m_)));
  const Elt gk1 = F.pow(g, k_ - 1);
  const Elt km = F.from_int(static_cast<std::int64_t>((k_ % F.p()) * (m_ % F.p())));

  std::vector<Elt> prefix(n_ + 1, 1), suffix(n_ + 1, 1);
  for (unsigned i = 0; i < n_; ++i) prefix[i + 1] = F.mul(prefix[i], x[i]);
  for (unsigned i = n_; i-- > 0;) suffix[i] = F.mul(suffix[i + 1], x[i]);
  const Elt allprod = prefix[n_];

  std::vector<Elt> out(n_ + 1);
  // d/dX_0 = k m a x0^{m-1} g^{k-1} - d b x0^{d-1} x_1...x_n  (absent if d = 0)
  {
    const Elt t1 = F.mul(F.mul(km, a_), F.mul(F.pow(x0, m_ - 1), gk1));
    Elt t2 = 0;
    if (d > 0) {
      const Elt dcoef = F.from_int(static_cast<std::int64_t>(d % F.p()));
      t2 = F.mul(F.mul(dcoef, b_), F.mul(F.pow(x0, d - 1), allprod));
    }
    out[0] = F.sub(t1, t2);
  }
  const Elt x0d = F.pow(x0, d);
  for (unsigned j = 0; j < n_; ++j) {
    const Elt t1 = F.mul(F.mul(km, coeffs_[j]), F.mul(F.pow(x[j], m_ - 1), gk1));
    const Elt t2 = F.mul(F.mul(b_, x0d), F.mul(prefix[j], suffix[j + 1]));
    out[j + 1] = F.sub(t1, t2);
  }
  return out;
}

std::string Instance::serialize() const {
  std::ostringstream os;
  os << field_->p() << ' ' << field_->s() << ' ' << n_ << ' ' << m_ << ' ' << k_
     << ' ';
  for (unsigned i = 0; i < n_; ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ' ' << a_ << ' ' << b_;
  return os.str();
}

Instance Instance::parse(const std::string& line, bool strict, std::uint64_t max_q) {
  std::istringstream is(line);
  std::uint32_t p = 0, s = 0;
  unsigned n = 0;
  std::uint64_t m = 0, k = 0;
  std::string coeff_str;
  std::uint64_t a = 0, b = 0;
  if (!(is >> p >> s >> n >> m >> k >> coeff_str >> a >> b))
    throw Error("instance: malformed record: " + line);
  std::vector<Elt> coeffs;
  std::istringstream cs(coeff_str);
  std::string tok;
  while (std::getline(cs, tok, ','))
    coeffs.push_back(static_cast<Elt>(std::stoul(tok)));
  auto field = Field::build(p, s, max_q);
  return create(std::move(field), n, m, k, std::move(coeffs),
                static_cast<Elt>(a), static_cast<Elt>(b), strict);
}

}  // namespace mhcount
