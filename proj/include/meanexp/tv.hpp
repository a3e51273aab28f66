#pragma once

// Tsfasman-Vladut constants, the greedy bound on sum b_q phi_q, B(L/K), and
// the assembled mean-exponent upper bounds.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "arith.hpp"
#include "fields.hpp"

namespace meanexp {

inline constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;
inline constexpr long double kPi = 3.14159265358979323846264338327950288L;

struct TVConstants {
  double gamma = static_cast<double>(kEulerGamma);
  double a0 = static_cast<double>(std::log(2.0L * std::sqrt(2.0L * kPi)) + kPi / 4.0L + kEulerGamma / 2.0L);
  double a1 = static_cast<double>(std::log(8.0L * kPi) + kEulerGamma);
  double b0 = static_cast<double>(std::log(2.0L));
  double b1 = static_cast<double>(std::log(2.0L * kPi));
};

inline const TVConstants& tv_constants() {
  static const TVConstants c{};
  return c;
}

inline double a_q(double q) { return std::log(q) / (std::sqrt(q) - 1.0); }
inline double b_q(double q) { return std::log(q / (q - 1.0)); }

struct FixedEntry {
  PrimePower q;
  double x = 0;
};

struct TVProblem {
  double x0 = 0;  // phi_R
  double x1 = 0;  // phi_C
  std::vector<FixedEntry> fixed;
  std::vector<BigInt> excluded;  // prime powers forced to zero

  double cap() const { return x0 + 2 * x1; }
};

struct Candidate {
  PrimePower q;
  double w = 0;  // x0 + 2 x1 - eps at the prime's smallest admissible norm
  unsigned count = 0;
};

struct TVSolution {
  std::optional<PrimePower> ell_star_0;
  double alpha = 0;
  double weight_star = 0;
  double budget = 0;
  double fixed_b = 0;
  double sum_b_bound = 0;
  double B_upper = 1;
  std::vector<Candidate> prefix;
};

inline void check_fixed_caps(const TVProblem& pr) {
  if (pr.x0 < 0 || pr.x1 < 0) fail(Errc::domain, "negative archimedean density");
  std::map<BigInt, double> usage;
  for (const auto& f : pr.fixed) {
    if (f.x < 0) fail(Errc::domain, "negative fixed density");
    usage[f.q.ell] += f.q.m * f.x;
  }
  for (const auto& [ell, u] : usage)
    if (u > pr.cap() * (1 + 1e-12) + 1e-15)
      fail(Errc::domain, "fixed usage at " + ell.str() + " exceeds x0 + 2 x1");
}

// 1 - a0 x0 - a1 x1 - sum over fixed of a_q x_q.
inline double budget(const TVProblem& pr) {
  check_fixed_caps(pr);
  const auto& c = tv_constants();
  double b = 1.0 - c.a0 * pr.x0 - c.a1 * pr.x1;
  for (const auto& f : pr.fixed) b -= a_q(f.q.as_double()) * f.x;
  if (b < 0) fail(Errc::infeasible, "fixed densities exhaust the basic inequality");
  return b;
}

inline TVSolution optimize(const TVProblem& pr, const std::vector<Candidate>& candidates) {
  TVSolution sol;
  sol.budget = budget(pr);
  const auto& c = tv_constants();
  for (const auto& f : pr.fixed) sol.fixed_b += b_q(f.q.as_double()) * f.x;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].w < 0) fail(Errc::domain, "negative candidate weight");
    if (i > 0 && !(candidates[i - 1].q.value < candidates[i].q.value))
      fail(Errc::domain, "candidates must be strictly ascending by norm");
  }

  double acc = 0, sb = sol.fixed_b;
  bool found = false;
  for (const auto& cand : candidates) {
    double q = cand.q.as_double();
    double cost = cand.w * a_q(q);
    if (acc + cost <= sol.budget) {
      acc += cost;
      sb += cand.w * b_q(q);
      sol.prefix.push_back(cand);
      continue;
    }
    sol.ell_star_0 = cand.q;
    sol.weight_star = cand.w;
    sol.alpha = (sol.budget - acc) / cost;
    sb += sol.alpha * cand.w * b_q(q);
    found = true;
    break;
  }
  if (!found && pr.cap() > 0) fail(Errc::needs_larger_enumeration, "candidate list exhausted before the budget");
  sol.sum_b_bound = sb;
  sol.B_upper = 1.0 + sb - pr.x0 * c.b0 - pr.x1 * c.b1;
  return sol;
}

// One candidate per rational prime: its smallest norm in K, weighted by the
// number of primes of K at that norm (in units of 1/g) and capped by
// (x0 + 2 x1)/m.
inline std::vector<Candidate> base_field_candidates(const FieldDescriptor& K, const TVProblem& pr, double g,
                                                    std::uint64_t bound, const std::set<BigInt>& skip_primes) {
  std::set<BigInt> excluded(pr.excluded.begin(), pr.excluded.end());
  std::vector<Candidate> out;
  if (bound < 2) return out;
  for (std::uint64_t ell : sieve_primes(bound)) {
    if (skip_primes.count(ell)) continue;
    NormCount nc = primes_above(K, ell).front();
    if (excluded.count(nc.q.value)) continue;
    double w = std::min(nc.count / g, pr.cap() / nc.q.m);
    out.push_back({nc.q, w, nc.count});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.q.value < b.q.value; });
  return out;
}

// Doubles the enumeration bound until the greedy fill terminates.
inline TVSolution optimize_over_field(const FieldDescriptor& K, const TVProblem& pr, double g, std::uint64_t bound,
                                      const std::set<BigInt>& skip_primes, std::uint64_t* used_bound = nullptr) {
  if (bound < 2) bound = 2;
  for (int round = 0; round < 40; ++round) {
    try {
      TVSolution s = optimize(pr, base_field_candidates(K, pr, g, bound, skip_primes));
      // The candidate at ell*_0 must not be preceded by an unseen smaller norm.
      if (!s.ell_star_0 || s.ell_star_0->value <= bound) {
        if (used_bound) *used_bound = bound;
        return s;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::needs_larger_enumeration) throw;
    }
    bound *= 2;
  }
  fail(Errc::needs_larger_enumeration, "enumeration bound grew without terminating");
}

enum class UniversalMode { GRH, GRH_totally_imaginary, Unconditional };

inline double universal_B(UniversalMode m) {
  switch (m) {
    case UniversalMode::GRH: return 1.0939;
    case UniversalMode::GRH_totally_imaginary: return 1.0765;
    case UniversalMode::Unconditional: return 1.1589;
  }
  return 0;
}

// Regulator lower bound density.
inline double zimmert_lower(double x0, double x1) {
  if (x0 < 0 || x1 < 0) fail(Errc::domain, "negative density");
  const double g = tv_constants().gamma;
  const double pi = static_cast<double>(kPi);
  return (std::log(std::sqrt(pi * std::exp(1.0))) + g / 2) * x0 + (std::log(2.0) + g) * x1;
}

// alpha(A,K,S) with an explicit signature for the archimedean correction.
inline double alpha_constant(double A, double log_sqrt_disc_KS, double r1, double r2) {
  const double g = tv_constants().gamma;
  const double pi = static_cast<double>(kPi);
  return A * log_sqrt_disc_KS - (r1 / 2) * (g + 1 + std::log(pi)) - r2 * (g + std::log(2.0));
}

inline double alpha_constant(double A, const FieldDescriptor& K, const PlaceSet& S, const BigInt& p) {
  return alpha_constant(A, 0.5 * disc_with_tame_conductor(K, S, p).log(), K.r1, K.r2);
}

inline double mean_exponent_upper(double epsilon, const BigInt& p, double alpha_value, double aSigma) {
  if (!(epsilon > 0)) fail(Errc::domain, "epsilon must be positive");
  return (alpha_value / log_big(p) + aSigma) / epsilon;
}

inline double propmain_upper(std::optional<double> C0, long t0, const BigInt& p, const FactoredInt& abs_disc) {
  if (!C0) fail(Errc::missing_parameter, "C0 must be supplied");
  if (!(*C0 > 0)) fail(Errc::domain, "C0 must be positive");
  if (t0 <= 0) fail(Errc::domain, "t0 must be positive");
  return (*C0 / t0) * abs_disc.log() / log_big(p);
}

inline double per_level_bound(double index, double d_n, const FieldDescriptor& K, const PlaceSet& S, double aSigma,
                              double ratio_h_over_g, const BigInt& p) {
  if (d_n == 0) return 0;
  if (d_n < 0 || index < 1 || ratio_h_over_g < 0) fail(Errc::domain, "invalid per-level data");
  double log_p_sqrt = 0.5 * disc_with_tame_conductor(K, S, p).log() / log_big(p);
  return (index / d_n) * (log_p_sqrt * ratio_h_over_g + aSigma);
}

}  // namespace meanexp
