#pragma once

// Class groups of imaginary quadratic orders from reduced binary quadratic
// forms and composition. Ground truth for small discriminants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "arith.hpp"
#include "groups.hpp"

namespace meanexp {

using i128 = __int128;

struct QuadForm {
  std::int64_t a = 1, b = 0, c = 0;

  std::int64_t disc() const { return b * b - 4 * a * c; }
  friend bool operator==(const QuadForm& x, const QuadForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
  friend bool operator<(const QuadForm& x, const QuadForm& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }
};

inline bool valid_negative_disc(std::int64_t D) {
  std::int64_t r = ((D % 4) + 4) % 4;
  return D < 0 && (r == 0 || r == 1);
}

inline bool is_reduced(const QuadForm& f) {
  if (f.a <= 0) return false;
  if (std::llabs(f.b) > f.a || f.a > f.c) return false;
  if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

namespace detail {

inline i128 floor_div(i128 x, i128 y) {
  i128 q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

inline std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(Errc::range, "form coefficient overflow");
  return static_cast<std::int64_t>(v);
}

// u a + v b = g >= 0.
inline void egcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v, std::int64_t& g) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  u = s0;
  v = t0;
  g = r0;
}

}  // namespace detail

inline QuadForm reduce(QuadForm f) {
  if (f.a <= 0 || f.disc() >= 0) fail(Errc::domain, "only positive definite forms reduce");
  auto normalize = [](QuadForm& g) {
    if (-g.a < g.b && g.b <= g.a) return;
    i128 r = detail::floor_div(static_cast<i128>(g.a) - g.b, 2 * static_cast<i128>(g.a));
    i128 nb = g.b + 2 * r * g.a;
    i128 nc = static_cast<i128>(g.a) * r * r + static_cast<i128>(g.b) * r + g.c;
    g.b = detail::narrow(nb);
    g.c = detail::narrow(nc);
  };
  normalize(f);
  while (f.a > f.c) {
    f = QuadForm{f.c, -f.b, f.a};
    normalize(f);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

inline QuadForm principal_form(std::int64_t D) {
  if (!valid_negative_disc(D)) fail(Errc::domain, "discriminant must be negative and 0 or 1 mod 4");
  std::int64_t b = (D % 2 == 0) ? 0 : 1;
  return QuadForm{1, b, (b * b - D) / 4};
}

inline QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

// Composition of primitive positive definite forms (Shanks/Cohen).
inline QuadForm compose(QuadForm f1, QuadForm f2) {
  std::int64_t D = f1.disc();
  if (f2.disc() != D) fail(Errc::domain, "composition of forms with different discriminants");
  if (f1.a > f2.a) std::swap(f1, f2);
  std::int64_t s = (f1.b + f2.b) / 2, n = f2.b - s;
  std::int64_t y1, d, u, v;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    detail::egcd(f2.a, f1.a, u, v, d);
    y1 = u;
  }
  std::int64_t x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    detail::egcd(s, d, u, v, d1);
    x2 = u;
    y2 = -v;
  }
  std::int64_t v1 = f1.a / d1, v2 = f2.a / d1;
  i128 r = (static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * f2.c) % v1;
  if (r < 0) r += v1;
  i128 b3 = f2.b + 2 * static_cast<i128>(v2) * r;
  i128 a3 = static_cast<i128>(v1) * v2;
  i128 num = b3 * b3 - D;
  if (num % (4 * a3) != 0) fail(Errc::internal, "composition produced a non-integral form");
  QuadForm out{detail::narrow(a3), detail::narrow(b3), detail::narrow(num / (4 * a3))};
  return reduce(out);
}

inline QuadForm power(QuadForm f, BigInt e) {
  QuadForm r = principal_form(f.disc());
  while (e > 0) {
    if ((e & 1) != 0) r = compose(r, f);
    f = compose(f, f);
    e >>= 1;
  }
  return r;
}

// f(px + qy, rx + sy) for ps - qr = 1.
inline QuadForm apply_unimodular(const QuadForm& f, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  if (p * s - q * r != 1) fail(Errc::domain, "matrix is not in SL2(Z)");
  i128 a = static_cast<i128>(f.a) * p * p + static_cast<i128>(f.b) * p * r + static_cast<i128>(f.c) * r * r;
  i128 b = 2 * static_cast<i128>(f.a) * p * q + static_cast<i128>(f.b) * (p * s + q * r) + 2 * static_cast<i128>(f.c) * r * s;
  i128 c = static_cast<i128>(f.a) * q * q + static_cast<i128>(f.b) * q * s + static_cast<i128>(f.c) * s * s;
  return QuadForm{detail::narrow(a), detail::narrow(b), detail::narrow(c)};
}

// All reduced primitive forms of discriminant D, sorted.
inline std::vector<QuadForm> reduced_forms(std::int64_t D) {
  if (!valid_negative_disc(D)) fail(Errc::domain, "discriminant must be negative and 0 or 1 mod 4");
  std::vector<QuadForm> out;
  std::int64_t bmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
  for (std::int64_t b = (D & 1); b <= bmax; b += 2) {
    std::int64_t num = b * b - D;
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= num / 4; ++a) {
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (a > c) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
      if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::int64_t class_number(std::int64_t D) { return static_cast<std::int64_t>(reduced_forms(D).size()); }

struct ClassGroup {
  std::int64_t D = 0;
  std::int64_t h = 0;
  std::map<BigInt, AbelianPShape> sylow;  // primes dividing h

  AbelianPShape sylow_at(const BigInt& p) const {
    auto it = sylow.find(p);
    return it == sylow.end() ? AbelianPShape(p, {}) : it->second;
  }
};

// Sylow structure from the counts |G[p^k]| over the whole group.
inline ClassGroup class_group_structure(std::int64_t D) {
  ClassGroup cg;
  cg.D = D;
  std::vector<QuadForm> forms = reduced_forms(D);
  cg.h = static_cast<std::int64_t>(forms.size());
  QuadForm id = principal_form(D);
  std::int64_t rest = cg.h;
  BigInt check = 1;
  for (std::int64_t p = 2; p <= rest; ++p) {
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    std::vector<std::int64_t> killed(e + 2, 0);
    killed[0] = 1;
    for (const auto& f : forms) {
      QuadForm x = f;
      for (unsigned k = 1; k <= e + 1; ++k) {
        x = power(x, p);
        if (x == id) {
          for (unsigned j = k; j <= e + 1; ++j) ++killed[j];
          break;
        }
      }
    }
    std::vector<unsigned> ranks(e + 2, 0);
    for (unsigned k = 1; k <= e + 1; ++k) {
      std::int64_t ratio = killed[k] / killed[k - 1];
      if (killed[k] % killed[k - 1]) fail(Errc::internal, "torsion counts are not nested");
      unsigned r = 0;
      while (ratio > 1) {
        if (ratio % p) fail(Errc::internal, "torsion ratio is not a power of p");
        ratio /= p;
        ++r;
      }
      ranks[k] = r;
    }
    std::vector<unsigned> exps;
    for (unsigned k = 1; k <= e; ++k)
      for (unsigned i = ranks[k + 1]; i < ranks[k]; ++i) exps.push_back(k);
    AbelianPShape shape(p, exps);
    check *= ipow(BigInt(p), order_log(shape));
    cg.sylow.emplace(BigInt(p), shape);
  }
  if (check != cg.h) fail(Errc::internal, "Sylow orders do not multiply to h");
  return cg;
}

// Classes of order dividing 2.
inline std::int64_t ambiguous_class_count(std::int64_t D) {
  std::int64_t n = 0;
  for (const auto& f : reduced_forms(D))
    if (f.b == 0 || f.b == f.a || f.a == f.c) ++n;
  return n;
}

// Number of assigned genus characters: ambiguous classes = 2^{mu - 1}.
inline unsigned genus_character_count(std::int64_t D) {
  if (!valid_negative_disc(D)) fail(Errc::domain, "discriminant must be negative and 0 or 1 mod 4");
  std::int64_t m = -D;
  while (m % 2 == 0) m /= 2;
  unsigned r = 0;
  for (std::int64_t q = 3; q * q <= m; q += 2) {
    if (m % q) continue;
    ++r;
    while (m % q == 0) m /= q;
  }
  if (m > 1) ++r;
  if (((D % 4) + 4) % 4 == 1) return r;
  std::int64_t n = -D / 4;
  if (n % 4 == 3) return r;
  if (n % 4 == 1 || n % 4 == 2) return r + 1;
  if (n % 8 == 4) return r + 1;
  return r + 2;
}

inline unsigned two_rank(std::int64_t D) { return rank(class_group_structure(D).sylow_at(2)); }

struct GroupLawReport {
  bool identity = true;
  bool inverse = true;
  bool associative = true;
  bool representative_independent = true;
  bool all() const { return identity && inverse && associative && representative_independent; }
};

// Sampled identity, inverse, associativity and SL2(Z)-invariance checks.
inline GroupLawReport check_group_laws(std::int64_t D, std::mt19937_64& rng, int samples) {
  GroupLawReport rep;
  std::vector<QuadForm> forms = reduced_forms(D);
  QuadForm id = principal_form(D);
  std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
  std::uniform_int_distribution<std::int64_t> small(-3, 3);
  auto random_sl2 = [&](std::int64_t& p, std::int64_t& q, std::int64_t& r, std::int64_t& s) {
    p = 1;
    q = 0;
    r = 0;
    s = 1;
    for (int k = 0; k < 3; ++k) {
      std::int64_t t = small(rng);
      // Multiply by [[1,t],[0,1]] then [[1,0],[t',1]].
      q += p * t;
      s += r * t;
      std::int64_t u = small(rng);
      p += q * u;
      r += s * u;
    }
  };
  for (int i = 0; i < samples; ++i) {
    QuadForm f = forms[pick(rng)], g = forms[pick(rng)], h = forms[pick(rng)];
    if (!(compose(id, f) == f) || !(compose(f, id) == f)) rep.identity = false;
    if (!(compose(f, inverse(f)) == id)) rep.inverse = false;
    if (!(compose(compose(f, g), h) == compose(f, compose(g, h)))) rep.associative = false;
    std::int64_t p, q, r, s;
    random_sl2(p, q, r, s);
    QuadForm f2 = apply_unimodular(f, p, q, r, s);
    random_sl2(p, q, r, s);
    QuadForm g2 = apply_unimodular(g, p, q, r, s);
    if (!(reduce(f2) == f) || !(compose(f2, g2) == compose(f, g))) rep.representative_independent = false;
  }
  return rep;
}

}  // namespace meanexp
