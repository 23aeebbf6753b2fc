#include "mhcount/unipoly.hpp"

#include <algorithm>

#include "mhcount/errors.hpp"

namespace mhcount {

Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Elt va = i < a.size() ? a[i] : 0;
    Elt vb = i < b.size() ? b[i] : 0;
    out[i] = F.add(va, vb);
  }
  return poly_trim(std::move(out));
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Elt va = i < a.size() ? a[i] : 0;
    Elt vb = i < b.size() ? b[i] : 0;
    out[i] = F.sub(va, vb);
  }
  return poly_trim(std::move(out));
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  return poly_trim(std::move(out));
}

Poly poly_mod(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw Error("unipoly: modulus by zero polynomial");
  a = poly_trim(std::move(a));
  const std::size_t db = b.size() - 1;
  if (db == 0) return {};  // nonzero constant divides everything
  const Elt lead_inv = F.inv(b.back());
  while (a.size() > db) {
    const Elt c = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t j = 0; j < db; ++j)
        a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Poly poly_monic(const Field& F, Poly f) {
  f = poly_trim(std::move(f));
  if (f.empty() || f.back() == 1) return f;
  const Elt c = F.inv(f.back());
  for (Elt& v : f) v = F.mul(v, c);
  return f;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  a = poly_monic(F, std::move(a));
  b = poly_monic(F, std::move(b));
  while (!b.empty()) {
    Poly r = poly_monic(F, poly_mod(F, std::move(a), b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Elt poly_eval(const Field& F, const Poly& f, Elt x) {
  Elt acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

Poly frobenius_power(const Field& F, const Poly& f) {
  if (poly_degree(poly_trim(f)) < 1)
    throw Error("unipoly: frobenius_power needs deg f >= 1");
  const Poly x{0, 1};
  const Poly base = poly_mod(F, x, f);
  Poly r{1};
  std::uint32_t e = F.q();
  int top = 31;
  while (top >= 0 && !((e >> top) & 1)) --top;
  for (int bit = top; bit >= 0; --bit) {
    r = poly_mod(F, poly_mul(F, r, r), f);
    if ((e >> bit) & 1) r = poly_mod(F, poly_mul(F, r, base), f);
  }
  return r;
}

int distinct_root_count(const Field& F, const Poly& f) {
  const Poly ft = poly_trim(f);
  if (ft.empty()) throw Error("unipoly: root count of zero polynomial");
  if (poly_degree(ft) == 0) return 0;
  const Poly xq = frobenius_power(F, ft);
  const Poly g = poly_gcd(F, ft, poly_sub(F, xq, Poly{0, 1}));
  return poly_degree(g);
}

}  // namespace mhcount
