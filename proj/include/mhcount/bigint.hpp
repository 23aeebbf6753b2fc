#ifndef MHCOUNT_BIGINT_HPP
#define MHCOUNT_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace mhcount {

using BigInt = boost::multiprecision::cpp_int;

/// Floor integer square root (nonnegative input).
inline BigInt isqrt(const BigInt& x) { return boost::multiprecision::sqrt(x); }

inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// Exact binomial coefficient C(n, k).
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= BigInt(n - k + i);
    r /= BigInt(i);  // exact at each step
  }
  return r;
}

}  // namespace mhcount

#endif
