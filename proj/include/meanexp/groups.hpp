#pragma once

// Finite abelian p-groups, mean exponents, Iwasawa growth.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace meanexp {

// Z/p^{a_1} x ... x Z/p^{a_d}, exponents kept non-increasing.
struct AbelianPShape {
  BigInt p = 2;
  std::vector<unsigned> exps;

  AbelianPShape() = default;
  AbelianPShape(BigInt prime, std::vector<unsigned> e) : p(std::move(prime)), exps(std::move(e)) {
    for (unsigned a : exps)
      if (a == 0) fail(Errc::domain, "elementary divisor exponent must be positive");
    std::sort(exps.begin(), exps.end(), std::greater<>());
  }

  bool trivial() const { return exps.empty(); }
};

inline unsigned exponent(const AbelianPShape& a) { return a.exps.empty() ? 0 : a.exps.front(); }
inline unsigned rank(const AbelianPShape& a) { return static_cast<unsigned>(a.exps.size()); }
inline unsigned order_log(const AbelianPShape& a) {
  unsigned s = 0;
  for (unsigned e : a.exps) s += e;
  return s;
}

// M_A = (sum a_i)/d, and 0 for the trivial group.
inline Rational mean_exponent(const AbelianPShape& a) {
  if (a.trivial()) return 0;
  return Rational(order_log(a), rank(a));
}

struct IwasawaParams {
  BigInt p = 2;
  BigInt mu = 0, lambda = 0, nu = 0, s = 0, c = 0;

  void validate() const {
    if (mu < 0 || lambda < 0 || s < 0 || c < 0) fail(Errc::domain, "negative Iwasawa parameter");
    if ((mu == 0) != (s == 0)) fail(Errc::inconsistent, "mu vanishes exactly when s does");
  }
};

struct LevelData {
  BigInt order_log;
  BigInt rank;
  Rational mean;
};

inline LevelData iwasawa_level_data(const IwasawaParams& P, unsigned n) {
  P.validate();
  BigInt pn = ipow(P.p, n);
  LevelData d;
  d.order_log = P.mu * pn + P.lambda * n + P.nu;
  d.rank = P.s * pn + P.lambda + P.c;
  if (d.rank <= 0) fail(Errc::inconsistent, "non-positive rank at level " + std::to_string(n));
  if (d.order_log < d.rank) fail(Errc::inconsistent, "order below rank at level " + std::to_string(n));
  d.mean = Rational(d.order_log, d.rank);
  return d;
}

enum class AsymptoticKind { GrowsLog, ConstantMuOverS, ConstantNuOverC };

struct AsymptoticClass {
  AsymptoticKind kind;
  Rational value;  // delta for GrowsLog, the limit otherwise
};

inline const char* asymptotic_name(AsymptoticKind k) {
  switch (k) {
    case AsymptoticKind::GrowsLog: return "grows_log";
    case AsymptoticKind::ConstantMuOverS: return "mu_over_s";
    case AsymptoticKind::ConstantNuOverC: return "nu_over_c";
  }
  return "?";
}

inline AsymptoticClass iwasawa_asymptotic_class(const IwasawaParams& P) {
  P.validate();
  if (P.mu != 0) return {AsymptoticKind::ConstantMuOverS, Rational(P.mu, P.s)};
  if (P.lambda != 0) return {AsymptoticKind::GrowsLog, Rational(P.lambda, P.lambda + P.c)};
  if (P.c == 0) fail(Errc::inconsistent, "mu = lambda = c = 0 leaves the rank at zero");
  return {AsymptoticKind::ConstantNuOverC, Rational(P.nu, P.c)};
}

}  // namespace meanexp
