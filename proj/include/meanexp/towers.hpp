#pragma once

// Rank bounds and infinitude criteria for restricted-ramification towers.
// Every inequality with a square root is decided in exact integers.

#include <cstdint>

#include "errors.hpp"

namespace meanexp {

using i64 = std::int64_t;

// lhs >= a + 2 sqrt(b)  <=>  lhs - a >= 0 and (lhs - a)^2 >= 4b.
inline bool at_least_a_plus_two_sqrt(i64 lhs, i64 a, i64 b) {
  if (b < 0) fail(Errc::domain, "negative radicand in criterion");
  __int128 diff = static_cast<__int128>(lhs) - a;
  if (diff < 0) return false;
  return diff * diff >= static_cast<__int128>(4) * b;
}

// d_p G_S^T >= |S| - (r1 + r2 + |T| - delta).
inline i64 rank_lower_bound_ST(i64 sizeS, i64 sizeT, i64 r1, i64 r2, i64 delta) {
  return sizeS - (r1 + r2 + sizeT - delta);
}

// Genus theory: d_p A_K >= rho - 1 - (r1 + r2 - 1 + delta).
inline i64 genus_rank_bound(i64 rho, i64 r1, i64 r2, i64 delta) {
  if (rho < 0) fail(Errc::domain, "negative ramified place count");
  return rho - 1 - (r1 + r2 - 1 + delta);
}

// Smallest relation rank compatible with a finite group on d generators.
inline i64 gs_finite_requires(i64 d) {
  if (d < 1) fail(Errc::domain, "generator rank below 1");
  return (d * d + 3) / 4;
}

enum class GSVerdict { MustBeInfinite, Inconclusive };

inline const char* verdict_name(GSVerdict v) {
  return v == GSVerdict::MustBeInfinite ? "must_be_infinite" : "inconclusive";
}

inline GSVerdict gs_verdict(i64 d, i64 r_upper) {
  if (d < 1 || r_upper < 0) fail(Errc::domain, "gs_verdict needs d >= 1 and r >= 0");
  return 4 * r_upper < d * d ? GSVerdict::MustBeInfinite : GSVerdict::Inconclusive;
}

// r(G_S^T) <= d + r1 + r2 - 1 + delta_{S,p} + |T|.
inline i64 shafarevich_relation_upper(i64 d, i64 r1, i64 r2, i64 sizeT, i64 delta_Sp) {
  return d + (r1 + r2 - 1 + delta_Sp + sizeT);
}

inline bool tsplit_criterion(i64 rho, i64 i_T, i64 r1k, i64 r2k, i64 sizeTk, i64 delta_k, i64 r1K, i64 r2K, i64 sizeTK,
                             i64 delta_K) {
  return at_least_a_plus_two_sqrt(rho + i_T, 3 + r1k + r2k + sizeTk - 1 + delta_k, r1K + r2K + sizeTK + delta_K);
}

// Real quadratic base: rho >= 4 + |T_dec| + 2 sqrt(3 + |T|).
inline bool critere_real_quadratic(i64 rho, i64 t_dec, i64 t_total) {
  if (t_dec > t_total) fail(Errc::domain, "t_dec exceeds t_total");
  if (t_dec < 0) fail(Errc::domain, "negative place count");
  return at_least_a_plus_two_sqrt(rho, 4 + t_dec, 3 + t_total);
}

inline i64 schreier_upper(i64 d_base, i64 index) {
  if (d_base < 1 || index < 1) fail(Errc::domain, "schreier_upper needs d >= 1 and index >= 1");
  return (d_base - 1) * index + 1;
}

inline i64 ershov_schmidt_ratio(i64 t, i64 r1, i64 r2) { return t - (r1 + r2); }

inline i64 hajir_refined_lower(i64 t, i64 index) {
  if (t < 1 || index < 1) fail(Errc::domain, "hajir_refined_lower needs t >= 1 and index >= 1");
  return t * index + 1;
}

}  // namespace meanexp
