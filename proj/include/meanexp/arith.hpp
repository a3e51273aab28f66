#pragma once

// Elementary number theory on arbitrary-precision integers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "errors.hpp"

namespace meanexp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool fits_u64(const BigInt& n) {
  return n >= 0 && n <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline BigInt ipow(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Natural log of a positive big integer, accurate to double precision.
inline double log_big(const BigInt& n) {
  if (n <= 0) fail(Errc::domain, "log of non-positive integer");
  unsigned bits = boost::multiprecision::msb(n);
  if (bits < 1000) return std::log(n.convert_to<double>());
  unsigned shift = bits - 60;
  BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

// Segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  if (limit < 2) fail(Errc::empty_range, "sieve limit below 2");
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<std::uint64_t> out;
  const std::uint64_t seg = std::max<std::uint64_t>(root, 1u << 15);
  std::vector<char> mark(seg);
  for (std::uint64_t lo = 2; lo <= limit; lo += seg) {
    std::uint64_t hi = std::min(limit, lo + seg - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (std::uint64_t i = lo; i <= hi; ++i)
      if (mark[i - lo]) out.push_back(i);
  }
  return out;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// (a|n) for odd n > 0, a >= 0.
inline int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  int k = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) k = -k;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) k = -k;
    a %= n;
  }
  return n == 1 ? k : 0;
}

inline int mod8(const BigInt& a) {
  BigInt r = a % 8;
  if (r < 0) r += 8;
  return r.convert_to<int>();
}

}  // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Exact below 2^64, probabilistic (25 rounds) above.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(n.convert_to<std::uint64_t>());
  return boost::multiprecision::miller_rabin_test(n, 25);
}

// Kronecker symbol (a|n).
inline int kronecker(const BigInt& a, const BigInt& n_in) {
  if (n_in == 0) fail(Errc::domain, "kronecker symbol with n = 0");
  int k = 1;
  BigInt n = n_in;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  unsigned v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if (detail::mod8(a) % 2 == 0) return 0;
    if (v & 1u) {
      int r = detail::mod8(a);
      if (r == 3 || r == 5) k = -k;
    }
  }
  if (n == 1) return k;
  BigInt r = a % n;
  if (r < 0) r += n;
  if (fits_u64(n)) return k * detail::jacobi_u64(r.convert_to<std::uint64_t>(), n.convert_to<std::uint64_t>());

  BigInt x = r, m = n;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      int t = detail::mod8(m);
      if (t == 3 || t == 5) k = -k;
    }
    std::swap(x, m);
    if (detail::mod8(x) % 4 == 3 && detail::mod8(m) % 4 == 3) k = -k;
    x %= m;
  }
  return m == 1 ? k : 0;
}

inline unsigned vp(const BigInt& n_in, const BigInt& p) {
  if (n_in == 0) fail(Errc::domain, "valuation of zero");
  if (p < 2) fail(Errc::domain, "valuation base below 2");
  BigInt n = n_in < 0 ? BigInt(-n_in) : n_in;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

// a(P) for a place of norm `norm` prime to p; the p = 2 branch uses the
// refined factor for norms congruent to 3 mod 4.
inline unsigned tame_local_factor(const BigInt& norm, const BigInt& p, bool split_completely) {
  if (norm < 2) fail(Errc::domain, "place norm below 2");
  if (gcd(norm, p) != 1) fail(Errc::domain, "place norm not prime to p");
  if (p != 2 || split_completely) return vp(norm - 1, p);
  if (norm % 4 == 1) return vp(norm - 1, 2);
  BigInt half = (norm - 1) / 2;
  return vp(1 + half, 2) + 1;
}

struct PrimePower {
  BigInt ell;
  unsigned m = 1;
  BigInt value;

  double as_double() const { return value.convert_to<double>(); }
  friend bool operator==(const PrimePower& x, const PrimePower& y) { return x.value == y.value; }
  friend bool operator<(const PrimePower& x, const PrimePower& y) { return x.value < y.value; }
};

inline PrimePower make_prime_power(const BigInt& ell, unsigned m) {
  if (m < 1) fail(Errc::domain, "prime power exponent below 1");
  if (!is_prime(ell)) fail(Errc::domain, "prime power base is not prime");
  return PrimePower{ell, m, ipow(ell, m)};
}

// Recovers (ell, m) from q = ell^m.
inline PrimePower prime_power_of(const BigInt& q) {
  if (q < 2) fail(Errc::domain, "prime power below 2");
  for (unsigned m = boost::multiprecision::msb(q) + 1; m >= 1; --m) {
    BigInt lo = 2, hi = BigInt(1) << (boost::multiprecision::msb(q) / m + 1);
    while (lo <= hi) {
      BigInt mid = (lo + hi) / 2;
      BigInt v = ipow(mid, m);
      if (v == q) {
        if (is_prime(mid)) return PrimePower{mid, m, q};
        break;
      }
      if (v < q) lo = mid + 1;
      else hi = mid - 1;
    }
    if (m == 1) break;
  }
  fail(Errc::domain, "not a prime power");
}

}  // namespace meanexp
