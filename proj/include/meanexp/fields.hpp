#pragma once

// Quadratic and biquadratic number fields, prime splitting, and tame
// conductors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace meanexp {

enum class SplitType { Split, Inert, Ramified };

inline const char* split_name(SplitType s) {
  switch (s) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    case SplitType::Ramified: return "ramified";
  }
  return "?";
}

// A radicand kept as sign and prime multiset, so ramified primes never need
// factoring.
struct Radicand {
  int sign = 1;
  std::vector<BigInt> primes;

  BigInt value() const {
    BigInt v = sign;
    for (const auto& q : primes) v *= q;
    return v;
  }

  // Squarefree part with the same sign.
  Radicand core() const {
    std::map<BigInt, unsigned> mult;
    for (const auto& q : primes) ++mult[q];
    Radicand r;
    r.sign = sign;
    for (const auto& [q, e] : mult)
      if (e % 2) r.primes.push_back(q);
    return r;
  }

  bool is_unit_square() const { return sign > 0 && core().primes.empty(); }

  friend bool operator==(const Radicand& x, const Radicand& y) {
    Radicand a = x.core(), b = y.core();
    return a.sign == b.sign && a.primes == b.primes;
  }

  // Entries are -1 (sign) or primes, e.g. [-1, 3] or [2, 2, 2, 5, 7].
  static Radicand from_factors(const std::vector<BigInt>& factors) {
    Radicand r;
    for (const auto& f : factors) {
      if (f == -1) {
        r.sign = -r.sign;
        continue;
      }
      if (f == 1) continue;
      if (!is_prime(f)) fail(Errc::domain, "radicand factor " + f.str() + " is not prime");
      r.primes.push_back(f);
    }
    std::sort(r.primes.begin(), r.primes.end());
    return r;
  }

  // Trial division to 10^6; a larger cofactor must be prime.
  static Radicand from_integer(const BigInt& n) {
    if (n == 0) fail(Errc::domain, "zero radicand");
    Radicand r;
    r.sign = n < 0 ? -1 : 1;
    BigInt m = n < 0 ? BigInt(-n) : n;
    for (std::uint64_t q = 2; q <= 1000000 && BigInt(q) * q <= m; ++q) {
      while (m % q == 0) {
        r.primes.push_back(q);
        m /= q;
      }
    }
    if (m > 1) {
      if (!is_prime(m)) fail(Errc::not_implemented, "radicand cofactor " + m.str() + " needs pre-factored input");
      r.primes.push_back(m);
    }
    return r;
  }
};

// Fundamental discriminant of Q(sqrt(r)) together with its prime divisors.
struct QuadraticData {
  Radicand core;
  BigInt disc;
  std::vector<BigInt> disc_primes;

  static QuadraticData of(const Radicand& r) {
    QuadraticData q;
    q.core = r.core();
    BigInt c = q.core.value();
    if (c == 1) fail(Errc::degenerate, "radicand is a square");
    BigInt m4 = c % 4;
    if (m4 < 0) m4 += 4;
    q.disc = m4 == 1 ? c : 4 * c;
    q.disc_primes = q.core.primes;
    if (m4 != 1 && (q.disc_primes.empty() || q.disc_primes.front() != 2))
      q.disc_primes.insert(q.disc_primes.begin(), 2);
    return q;
  }

  bool ramified(const BigInt& ell) const { return q_divides(ell); }
  SplitType split(const BigInt& ell) const {
    int k = kronecker(disc, ell);
    return k == 0 ? SplitType::Ramified : (k == 1 ? SplitType::Split : SplitType::Inert);
  }

 private:
  bool q_divides(const BigInt& ell) const { return disc % ell == 0; }
};

inline BigInt fundamental_discriminant(const Radicand& r) { return QuadraticData::of(r).disc; }

inline BigInt fundamental_discriminant(const BigInt& radicand) {
  if (radicand == 0 || radicand == 1) fail(Errc::domain, "radicand must differ from 0 and 1");
  return fundamental_discriminant(Radicand::from_integer(radicand));
}

struct FieldDescriptor {
  unsigned degree = 1;
  unsigned r1 = 1;
  unsigned r2 = 0;
  std::map<BigInt, unsigned> abs_disc_factored;
  std::string label = "Q";
  std::vector<QuadraticData> subfields;

  BigInt abs_disc() const {
    BigInt v = 1;
    for (const auto& [q, e] : abs_disc_factored) v *= ipow(q, e);
    return v;
  }

  double log_abs_disc() const {
    double s = 0;
    for (const auto& [q, e] : abs_disc_factored) s += e * log_big(q);
    return s;
  }

  bool is_quadratic() const { return degree == 2; }
  bool is_biquadratic() const { return degree == 4; }

  // 1 when the p-th roots of unity lie in the field.
  int delta(const BigInt& p) const {
    if (p == 2) return 1;
    if (p == 3) {
      for (const auto& s : subfields)
        if (s.disc == -3) return 1;
    }
    return 0;
  }
};

namespace detail {

inline void add_disc_factors(std::map<BigInt, unsigned>& out, const QuadraticData& q) {
  for (const auto& ell : q.disc_primes) out[ell] += vp(q.disc, ell);
}

}  // namespace detail

inline FieldDescriptor rational_field() { return FieldDescriptor{}; }

inline FieldDescriptor quadratic_field(const Radicand& r, std::string label = {}) {
  FieldDescriptor f;
  QuadraticData q = QuadraticData::of(r);
  f.degree = 2;
  f.r1 = q.disc > 0 ? 2 : 0;
  f.r2 = q.disc > 0 ? 0 : 1;
  detail::add_disc_factors(f.abs_disc_factored, q);
  f.label = label.empty() ? "Q(sqrt(" + q.core.value().str() + "))" : label;
  f.subfields.push_back(q);
  return f;
}

inline Radicand third_radicand(const Radicand& a, const Radicand& b) {
  Radicand r;
  r.sign = a.sign * b.sign;
  r.primes = a.primes;
  r.primes.insert(r.primes.end(), b.primes.begin(), b.primes.end());
  std::sort(r.primes.begin(), r.primes.end());
  return r.core();
}

inline FieldDescriptor biquadratic_field(const Radicand& d1, const Radicand& d2, std::string label = {}) {
  QuadraticData q1 = QuadraticData::of(d1), q2 = QuadraticData::of(d2);
  if (q1.disc == q2.disc) fail(Errc::degenerate, "radicands generate the same quadratic field");
  QuadraticData q3 = QuadraticData::of(third_radicand(q1.core, q2.core));
  FieldDescriptor f;
  f.degree = 4;
  bool real = q1.disc > 0 && q2.disc > 0;
  f.r1 = real ? 4 : 0;
  f.r2 = real ? 0 : 2;
  for (const auto* q : {&q1, &q2, &q3}) detail::add_disc_factors(f.abs_disc_factored, *q);
  f.label = label.empty() ? "Q(sqrt(" + q1.core.value().str() + "), sqrt(" + q2.core.value().str() + "))" : label;
  f.subfields = {q1, q2, q3};
  return f;
}

// g = log sqrt|disc|.
inline double genus(const FieldDescriptor& f) { return 0.5 * f.log_abs_disc(); }

inline double root_discriminant(const FieldDescriptor& f) { return std::exp(f.log_abs_disc() / f.degree); }

struct Place {
  BigInt norm;
  std::optional<SplitType> split_in_base;
  unsigned count = 1;
  bool split_completely = false;
};

struct PlaceSet {
  std::vector<Place> places;

  unsigned size() const {
    unsigned n = 0;
    for (const auto& pl : places) n += pl.count;
    return n;
  }
  bool empty() const { return places.empty(); }
};

// a(S) = sum of tame local factors.
inline unsigned local_factor_sum(const PlaceSet& s, const BigInt& p) {
  unsigned total = 0;
  for (const auto& pl : s.places) total += pl.count * tame_local_factor(pl.norm, p, pl.split_completely);
  return total;
}

struct FactoredInt {
  std::map<BigInt, unsigned> factors;

  BigInt value() const {
    BigInt v = 1;
    for (const auto& [q, e] : factors) v *= ipow(q, e);
    return v;
  }
  double log() const {
    double s = 0;
    for (const auto& [q, e] : factors) s += e * log_big(q);
    return s;
  }
};

// disc(K,S) = |disc K| times the norms of S.
inline FactoredInt disc_with_tame_conductor(const FieldDescriptor& f, const PlaceSet& s, const BigInt& p) {
  FactoredInt out{f.abs_disc_factored};
  for (const auto& pl : s.places) {
    if (gcd(pl.norm, p) != 1) fail(Errc::domain, "place of S lies above p");
    PrimePower q = prime_power_of(pl.norm);
    out.factors[q.ell] += q.m * pl.count;
  }
  return out;
}

inline SplitType splitting_type(const FieldDescriptor& f, const BigInt& ell) {
  if (!f.is_quadratic()) fail(Errc::not_implemented, "splitting_type needs a quadratic field");
  return f.subfields.front().split(ell);
}

struct NormCount {
  PrimePower q;
  unsigned count = 0;
  BigInt ell() const { return q.ell; }
};

// Primes of the field above ell, grouped by norm, smallest norm first.
inline std::vector<NormCount> primes_above(const FieldDescriptor& f, const BigInt& ell) {
  auto pp = [&](unsigned m) { return PrimePower{ell, m, ipow(ell, m)}; };
  if (f.degree == 1) return {{pp(1), 1}};
  if (f.is_quadratic()) {
    switch (f.subfields.front().split(ell)) {
      case SplitType::Split: return {{pp(1), 2}};
      case SplitType::Inert: return {{pp(2), 1}};
      case SplitType::Ramified: return {{pp(1), 1}};
    }
  }
  if (!f.is_biquadratic()) fail(Errc::not_implemented, "unsupported field shape");
  unsigned ram = 0, split = 0;
  std::optional<SplitType> unram;
  for (const auto& s : f.subfields) {
    SplitType t = s.split(ell);
    if (t == SplitType::Ramified) ++ram;
    else {
      if (t == SplitType::Split) ++split;
      unram = t;
    }
  }
  if (ram == 0) return split == 3 ? std::vector<NormCount>{{pp(1), 4}} : std::vector<NormCount>{{pp(2), 2}};
  if (ram == 3) return {{pp(1), 1}};
  if (ram != 2) fail(Errc::internal, "prime ramified in exactly one quadratic subfield");
  return *unram == SplitType::Split ? std::vector<NormCount>{{pp(1), 2}} : std::vector<NormCount>{{pp(2), 1}};
}

inline std::vector<NormCount> enumerate_norms(const FieldDescriptor& f, std::uint64_t bound) {
  if (bound < 2) return {};
  if (f.degree > 4 || f.degree == 3) fail(Errc::not_implemented, "unsupported field shape");
  std::vector<NormCount> out;
  for (std::uint64_t ell : sieve_primes(bound))
    for (auto& nc : primes_above(f, ell)) out.push_back(nc);
  std::stable_sort(out.begin(), out.end(), [](const NormCount& a, const NormCount& b) { return a.q.value < b.q.value; });
  return out;
}

// Ramified places of k in k(sqrt(d))/k, counting real places that become
// complex.
inline unsigned ramified_place_count(const FieldDescriptor& k, const Radicand& d, const BigInt& p) {
  if (p != 2) fail(Errc::not_implemented, "only quadratic extensions (p = 2) are modelled");
  if (k.degree == 1) {
    QuadraticData q = QuadraticData::of(d);
    return static_cast<unsigned>(q.disc_primes.size()) + (q.disc < 0 ? 1u : 0u);
  }
  if (!k.is_quadratic()) fail(Errc::not_implemented, "base field must be Q or quadratic");
  const QuadraticData& qk = k.subfields.front();
  FieldDescriptor big = biquadratic_field(qk.core, d);
  unsigned count = 0;
  for (const auto& [ell, e] : big.abs_disc_factored) {
    unsigned ram = 0;
    for (const auto& s : big.subfields)
      if (s.split(ell) == SplitType::Ramified) ++ram;
    unsigned eK = ram == 0 ? 1 : (ram == 2 ? 2 : 4);
    bool ram_k = qk.split(ell) == SplitType::Ramified;
    unsigned ek = ram_k ? 2 : 1;
    if (eK <= ek) continue;
    count += ram_k ? 1 : (qk.split(ell) == SplitType::Split ? 2 : 1);
  }
  if (k.r1 > 0 && big.r1 == 0) count += k.r1;
  return count;
}

}  // namespace meanexp
