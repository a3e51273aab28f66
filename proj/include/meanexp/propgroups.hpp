#pragma once

// Poincare series of Golod-Shafarevich type pro-p groups and the ranks b_i
// of their Zassenhaus filtration quotients.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"

namespace meanexp {

struct GSGroupParams {
  unsigned d = 2;
  unsigned r = 1;
  BigInt p = 3;
  std::vector<unsigned> relation_degrees;  // empty: r relations of degree 2

  std::vector<unsigned> degrees() const {
    if (relation_degrees.empty()) return std::vector<unsigned>(r, 2);
    if (relation_degrees.size() != r) fail(Errc::domain, "relation degree list does not match r");
    for (unsigned a : relation_degrees)
      if (a < 2) fail(Errc::domain, "relation degree below 2");
    return relation_degrees;
  }
  bool quadratic() const {
    for (unsigned a : degrees())
      if (a != 2) return false;
    return true;
  }
  // d^2 >= 4r with r >= d.
  bool gs_typical() const { return quadratic() && d * d >= 4 * r && r >= d; }
};

struct SeriesExpansion {
  std::vector<BigInt> coeffs;
};

// b[i-1] holds b_i.
struct ZassenhausRanks {
  std::vector<BigInt> b;
  BigInt p;

  std::size_t order() const { return b.size(); }
  const BigInt& at(std::size_t i) const {
    if (i < 1 || i > b.size()) fail(Errc::range, "rank index " + std::to_string(i) + " not computed");
    return b[i - 1];
  }
};

// Coefficients of 1/Q(T) with Q(T) = 1 - dT + sum_i T^{a_i}.
inline SeriesExpansion gs_series(const GSGroupParams& g, std::size_t N) {
  std::vector<unsigned> deg = g.degrees();
  SeriesExpansion s;
  s.coeffs.assign(N + 1, BigInt(0));
  s.coeffs[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt c = BigInt(g.d) * s.coeffs[n - 1];
    for (unsigned a : deg)
      if (a <= n) c -= s.coeffs[n - a];
    if (c < 0) fail(Errc::inconsistent, "negative coefficient at order " + std::to_string(n));
    s.coeffs[n] = c;
  }
  return s;
}

namespace detail {

// out = x * y truncated at order N.
inline void mul_truncated(std::vector<BigInt>& x, const std::vector<std::pair<std::size_t, BigInt>>& sparse,
                          std::size_t N) {
  std::vector<BigInt> out(N + 1, BigInt(0));
  for (std::size_t i = 0; i <= N; ++i) {
    if (x[i] == 0) continue;
    for (const auto& [k, c] : sparse) {
      if (i + k > N) break;
      out[i + k] += x[i] * c;
    }
  }
  x.swap(out);
}

// Multiplies by ((1 - T^{p i}) / (1 - T^i))^b.
inline void mul_factor(std::vector<BigInt>& x, std::size_t i, const BigInt& b, std::size_t pi, std::size_t N) {
  if (b == 0) return;
  std::vector<std::pair<std::size_t, BigInt>> inv;
  BigInt c = 1;
  for (std::size_t k = 0; k * i <= N; ++k) {
    if (k > 0) c = c * (b + k - 1) / k;
    inv.emplace_back(k * i, c);
  }
  mul_truncated(x, inv, N);
  if (pi > N) return;
  std::vector<std::pair<std::size_t, BigInt>> num;
  c = 1;
  for (std::size_t k = 0; k * pi <= N && BigInt(k) <= b; ++k) {
    if (k > 0) c = c * (b - k + 1) / k;
    num.emplace_back(k * pi, (k % 2) ? BigInt(-c) : c);
  }
  mul_truncated(x, num, N);
}

inline std::size_t stride(const BigInt& p, std::size_t i, std::size_t N) {
  BigInt pi = p * i;
  return pi > N ? N + 1 : pi.convert_to<std::size_t>();
}

inline std::vector<int> mobius_table(std::size_t N) {
  std::vector<int> mu(N + 1, 1);
  std::vector<char> composite(N + 1, 0);
  for (std::size_t i = 2; i <= N; ++i) {
    if (composite[i]) continue;
    for (std::size_t j = i; j <= N; j += i) {
      if (j > i) composite[j] = 1;
      mu[j] = -mu[j];
    }
    if (i <= N / i)
      for (std::size_t j = i * i; j <= N; j += i * i) mu[j] = 0;
  }
  return mu;
}

}  // namespace detail

// Order-by-order matching: the factor for index i first touches T^i.
inline ZassenhausRanks zassenhaus_ranks(const SeriesExpansion& s, const BigInt& p, std::size_t N) {
  if (s.coeffs.empty() || s.coeffs[0] != 1) fail(Errc::domain, "series must start with 1");
  if (s.coeffs.size() <= N) fail(Errc::range, "series shorter than requested order");
  if (!is_prime(p)) fail(Errc::domain, "p must be prime");
  ZassenhausRanks z{{}, p};
  std::vector<BigInt> prod(N + 1, BigInt(0));
  prod[0] = 1;
  for (std::size_t i = 1; i <= N; ++i) {
    BigInt b = s.coeffs[i] - prod[i];
    if (b < 0) fail(Errc::inconsistent, "negative rank forced at order " + std::to_string(i));
    z.b.push_back(b);
    detail::mul_factor(prod, i, b, detail::stride(p, i, N), N);
  }
  return z;
}

// prod_i ((T^{pi} - 1)/(T^i - 1))^{b_i} to order N.
inline SeriesExpansion reconstruct_series(const ZassenhausRanks& z, std::size_t N) {
  if (z.order() < N) fail(Errc::range, "ranks shorter than requested order");
  std::vector<BigInt> prod(N + 1, BigInt(0));
  prod[0] = 1;
  for (std::size_t i = 1; i <= N; ++i) detail::mul_factor(prod, i, z.b[i - 1], detail::stride(z.p, i, N), N);
  return {prod};
}

// s_1..s_N (index 0 unused) with U'/U = sum s_m T^{m-1}, for U = 1/Q.
inline std::vector<BigInt> power_sums(const GSGroupParams& g, std::size_t N) {
  std::vector<unsigned> deg = g.degrees();
  std::size_t top = 1;
  for (unsigned a : deg) top = std::max<std::size_t>(top, a);
  std::vector<BigInt> q(top + 1, BigInt(0));
  q[0] = 1;
  q[1] = -BigInt(g.d);
  for (unsigned a : deg) q[a] += 1;
  std::vector<BigInt> s(N + 1, BigInt(0));
  for (std::size_t m = 1; m <= N; ++m) {
    BigInt v = m <= top ? BigInt(-BigInt(m) * q[m]) : BigInt(0);
    for (std::size_t j = 1; j < m && j <= top; ++j) v -= q[j] * s[m - j];
    s[m] = v;
  }
  return s;
}

// Ranks from power sums: f(m) = sum_{i|m} i b_i = s_m + p f(m/p), then
// Mobius inversion.
inline ZassenhausRanks ranks_from_power_sums(const std::vector<BigInt>& s, const BigInt& p, std::size_t N) {
  if (s.size() <= N) fail(Errc::range, "power sums shorter than requested order");
  std::vector<BigInt> f(N + 1, BigInt(0));
  for (std::size_t m = 1; m <= N; ++m) {
    f[m] = s[m];
    if (BigInt(m) % p == 0) f[m] += p * f[(BigInt(m) / p).convert_to<std::size_t>()];
  }
  std::vector<int> mu = detail::mobius_table(N);
  ZassenhausRanks z{{}, p};
  z.b.reserve(N);
  for (std::size_t m = 1; m <= N; ++m) {
    BigInt acc = 0;
    for (std::size_t e = 1; e * e <= m; ++e) {
      if (m % e) continue;
      if (mu[m / e]) acc += mu[m / e] * f[e];
      std::size_t o = m / e;
      if (o != e && mu[e]) acc += mu[e] * f[o];
    }
    if (acc % m != 0) fail(Errc::inconsistent, "rank at order " + std::to_string(m) + " is not integral");
    BigInt b = acc / m;
    if (b < 0) fail(Errc::inconsistent, "negative rank forced at order " + std::to_string(m));
    z.b.push_back(b);
  }
  return z;
}

inline ZassenhausRanks gs_ranks(const GSGroupParams& g, std::size_t N) {
  return ranks_from_power_sums(power_sums(g, N), g.p, N);
}

// s_m = sum_{i|m} i b_i, valid when p does not divide m.
inline bool power_sum_check(const GSGroupParams& g, std::size_t m, const ZassenhausRanks& z) {
  if (m < 1) fail(Errc::domain, "m must be positive");
  if (BigInt(m) % g.p == 0) fail(Errc::inapplicable, "identity needs p not dividing m");
  if (z.order() < m) fail(Errc::range, "ranks shorter than m");
  BigInt rhs = 0;
  for (std::size_t i = 1; i <= m; ++i)
    if (m % i == 0) rhs += BigInt(i) * z.at(i);
  return power_sums(g, m)[m] == rhs;
}

// b_{2^n} = (s_{2^n} - s_{2^{n-1}}) / 2^n for odd p.
inline BigInt b_power_of_two(const GSGroupParams& g, unsigned n) {
  if (g.p == 2) fail(Errc::inapplicable, "power-of-two shortcut needs p odd");
  if (n < 1) fail(Errc::domain, "n must be at least 1");
  std::size_t m = std::size_t(1) << n;
  auto s = power_sums(g, m);
  BigInt num = s[m] - s[m / 2];
  if (num % m != 0) fail(Errc::inconsistent, "power sums not divisible by 2^n");
  return num / m;
}

// log_p [G : D_{2^n}] = b_1 + ... + b_{2^n - 1}.
inline BigInt index_log(const ZassenhausRanks& z, unsigned n) {
  std::size_t hi = (std::size_t(1) << n) - 1;
  if (z.order() < hi) fail(Errc::range, "insufficient rank data for index_log");
  BigInt s = 0;
  for (std::size_t i = 1; i <= hi; ++i) s += z.b[i - 1];
  return s;
}

// b_{2^n} + ... + b_{2^{n+1} - 1}.
inline BigInt window_rank(const ZassenhausRanks& z, unsigned n) {
  std::size_t lo = std::size_t(1) << n, hi = (std::size_t(1) << (n + 1)) - 1;
  if (z.order() < hi) fail(Errc::range, "insufficient rank data for window_rank");
  BigInt s = 0;
  for (std::size_t i = lo; i <= hi; ++i) s += z.b[i - 1];
  return s;
}

inline constexpr std::size_t kExactRankOrder = 4096;

struct WitnessRow {
  unsigned n = 0;
  double log10_index_log = 0;
  double log10_window_rank = 0;
  double log10_rhs = 0;
  std::string index_log;    // decimal (exact) or scientific (log-float)
  std::string window_rank;
  std::string rhs;
  bool satisfied = false;
  std::string regime;  // "exact" or "log-float"
};

struct WitnessReport {
  std::vector<WitnessRow> rows;
  bool gs_typical = false;
};

namespace detail {

inline double log_add(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline std::string sci_from_log(double ln_value) {
  if (std::isinf(ln_value)) return "0";
  double l10 = ln_value / std::log(10.0);
  double e = std::floor(l10);
  double mant = std::pow(10.0, l10 - e);
  if (mant >= 9.9999995) {
    mant = 1.0;
    e += 1;
  }
  std::ostringstream os;
  os.precision(7);
  os << std::fixed << mant << "e" << (e >= 0 ? "+" : "") << static_cast<long long>(e);
  return os.str();
}

inline double ln_or_neg_inf(const BigInt& v) { return v > 0 ? log_big(v) : -INFINITY; }

}  // namespace detail

// Checks window_rank(n) >= index_log(n)^{2 - eps} for n = 1..N. Orders up to
// kExactRankOrder are exact; beyond, b_i ~ t_i alpha^i / i with t_i = s_i /
// alpha^i propagated in long double (neglected divisor terms are
// O(alpha^{-i/2}) relative).
inline WitnessReport theo2_witnesses(const GSGroupParams& g, double eps, unsigned N) {
  if (!(eps > 0 && eps < 1)) fail(Errc::domain, "epsilon must lie in (0,1)");
  WitnessReport rep;
  rep.gs_typical = g.gs_typical();
  if (N == 0) return rep;
  std::size_t need = (std::size_t(1) << (N + 1)) - 1;
  std::size_t exact = std::min(need, kExactRankOrder - 1);
  std::vector<BigInt> s = power_sums(g, exact);
  ZassenhausRanks z = ranks_from_power_sums(s, g.p, exact);

  // log of b_i for the float regime.
  std::vector<long double> log_b;
  if (need > exact) {
    if (!g.quadratic()) fail(Errc::not_implemented, "log-float regime needs quadratic relations");
    long double disc = static_cast<long double>(g.d) * g.d - 4.0L * g.r;
    if (disc < 0) fail(Errc::inapplicable, "complex dominant roots: d^2 < 4r");
    long double alpha = (g.d + std::sqrt(disc)) / 2.0L;
    if (alpha <= 1) fail(Errc::inapplicable, "no exponential growth");
    long double la = std::log(alpha);
    long double t1 = std::exp(static_cast<long double>(detail::ln_or_neg_inf(s[exact])) - exact * la);
    long double t0 = std::exp(static_cast<long double>(detail::ln_or_neg_inf(s[exact - 1])) - (exact - 1) * la);
    log_b.assign(need + 1, 0);
    for (std::size_t i = exact + 1; i <= need; ++i) {
      long double t = (g.d * t1) / alpha - (g.r * t0) / (alpha * alpha);
      t0 = t1;
      t1 = t;
      log_b[i] = std::log(t) + i * la - std::log(static_cast<long double>(i));
    }
  }

  auto range_log = [&](std::size_t lo, std::size_t hi, bool& all_exact, BigInt& exact_sum) {
    exact_sum = 0;
    double lsum = -INFINITY;
    for (std::size_t i = lo; i <= hi && i <= exact; ++i) exact_sum += z.b[i - 1];
    all_exact = hi <= exact;
    lsum = detail::ln_or_neg_inf(exact_sum);
    if (!all_exact) {
      // Terms grow geometrically; sum from the top down until negligible.
      std::size_t start = std::max(lo, exact + 1);
      double top = static_cast<double>(log_b[hi]);
      long double acc = 0;
      for (std::size_t i = hi; i >= start; --i) {
        long double rel = log_b[i] - top;
        if (rel < -60) break;
        acc += std::exp(rel);
        if (i == start) break;
      }
      lsum = detail::log_add(lsum, top + static_cast<double>(std::log(acc)));
    }
    return lsum;
  };

  const double ln10 = std::log(10.0);
  for (unsigned n = 1; n <= N; ++n) {
    WitnessRow row;
    row.n = n;
    bool ex_i, ex_w;
    BigInt vi, vw;
    double li = range_log(1, (std::size_t(1) << n) - 1, ex_i, vi);
    double lw = range_log(std::size_t(1) << n, (std::size_t(1) << (n + 1)) - 1, ex_w, vw);
    double lr = (2.0 - eps) * li;
    row.log10_index_log = li / ln10;
    row.log10_window_rank = lw / ln10;
    row.log10_rhs = lr / ln10;
    row.index_log = ex_i ? vi.str() : detail::sci_from_log(li);
    row.window_rank = ex_w ? vw.str() : detail::sci_from_log(lw);
    row.rhs = detail::sci_from_log(lr);
    row.satisfied = lw >= lr;
    row.regime = (ex_i && ex_w) ? "exact" : "log-float";
    rep.rows.push_back(row);
  }
  return rep;
}

struct UniformLower {
  double bound;
  long index_log;  // log_p [G : G_n] = d n
};

inline UniformLower uniform_lower(long d, long n) {
  if (d < 1 || n < 1) fail(Errc::domain, "uniform_lower needs d, n >= 1");
  return {static_cast<double>(n), d * n};
}

inline double prop_theo1_bound(double c_KST, double index) {
  if (!(c_KST > 0)) fail(Errc::domain, "constant must be positive");
  if (index < 1) fail(Errc::domain, "index must be at least 1");
  return c_KST * index;
}

}  // namespace meanexp
