#pragma once

// Scenario files (JSON) describing a tower construction over a biquadratic
// field K = k(sqrt(d2)), k = Q(sqrt(d1)), and the report they produce.

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fields.hpp"
#include "towers.hpp"
#include "tv.hpp"

namespace meanexp {

using json = nlohmann::ordered_json;

inline constexpr const char* kScenarioVersion = "meanexp-scenario/1";
inline constexpr const char* kReportVersion = "meanexp-report/1";

struct ScenarioFixed {
  BigInt q;
  double phi_g = 0;  // density in units of 1/g
};

struct Scenario {
  std::string label;
  BigInt p = 2;
  Radicand d1, d2;
  std::vector<BigInt> T_dec, T_in;
  std::vector<BigInt> S_norms, Sigma_norms;
  std::optional<double> x0_g, x1_g;
  std::vector<ScenarioFixed> fixed;
  std::vector<BigInt> fixed_at_capacity;
  std::vector<BigInt> excluded_primes;
  std::uint64_t enumeration_bound = 2000;
  std::optional<double> epsilon_linear;
  std::optional<double> reg_r1, reg_r2;
  std::optional<double> coarse_B;
  std::optional<double> g_override;
  std::optional<double> C0;
  json expected = json::object();
  json notes = json::array();
};

namespace detail {

inline std::string path_join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

inline BigInt json_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (...) {
    }
  }
  fail(Errc::schema, where + ": expected an integer");
}

inline std::vector<BigInt> json_int_list(const json& obj, const char* key, const std::string& where, bool required) {
  std::vector<BigInt> out;
  if (!obj.contains(key)) {
    if (required) fail(Errc::schema, path_join(where, key) + ": missing");
    return out;
  }
  const json& a = obj.at(key);
  if (!a.is_array()) fail(Errc::schema, path_join(where, key) + ": expected an array");
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(json_int(a[i], path_join(where, key) + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::optional<double> json_opt_num(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) fail(Errc::schema, path_join(where, key) + ": expected a number");
  return obj.at(key).get<double>();
}

inline Radicand radicand_at(const json& obj, const char* key, const std::string& where) {
  try {
    return Radicand::from_factors(json_int_list(obj, key, where, true));
  } catch (const Error& e) {
    if (e.code() == Errc::schema) throw;
    fail(Errc::schema, path_join(where, key) + ": " + e.what());
  }
}

inline std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

}  // namespace detail

inline Scenario parse_scenario(const json& j) {
  using namespace detail;
  if (!j.is_object()) fail(Errc::schema, "scenario: expected an object");
  Scenario s;
  if (!j.contains("version") || j.at("version") != kScenarioVersion)
    fail(Errc::schema, std::string("version: expected \"") + kScenarioVersion + "\"");
  s.label = j.value("label", std::string("scenario"));
  if (j.contains("p")) s.p = json_int(j.at("p"), "p");
  if (!is_prime(s.p)) fail(Errc::schema, "p: not prime");
  if (!j.contains("field") || !j.at("field").is_object()) fail(Errc::schema, "field: missing object");
  const json& f = j.at("field");
  if (f.value("type", std::string()) != "biquadratic") fail(Errc::schema, "field.type: only \"biquadratic\" scenarios are supported");
  s.d1 = radicand_at(f, "d1_factors", "field");
  s.d2 = radicand_at(f, "d2_factors", "field");
  if (j.contains("T")) {
    const json& t = j.at("T");
    if (!t.is_object()) fail(Errc::schema, "T: expected an object");
    s.T_dec = json_int_list(t, "dec", "T", false);
    s.T_in = json_int_list(t, "in", "T", false);
  }
  s.S_norms = json_int_list(j, "S", "", false);
  s.Sigma_norms = json_int_list(j, "Sigma", "", false);
  if (j.contains("tv")) {
    const json& tv = j.at("tv");
    if (!tv.is_object()) fail(Errc::schema, "tv: expected an object");
    s.x0_g = json_opt_num(tv, "x0_g", "tv");
    s.x1_g = json_opt_num(tv, "x1_g", "tv");
    if (tv.contains("fixed")) {
      const json& fx = tv.at("fixed");
      if (!fx.is_array()) fail(Errc::schema, "tv.fixed: expected an array");
      for (std::size_t i = 0; i < fx.size(); ++i) {
        std::string w = "tv.fixed[" + std::to_string(i) + "]";
        if (!fx[i].is_object() || !fx[i].contains("q")) fail(Errc::schema, w + ": expected {q, phi_g}");
        auto phi = json_opt_num(fx[i], "phi_g", w);
        if (!phi) fail(Errc::schema, w + ".phi_g: missing");
        s.fixed.push_back({json_int(fx[i].at("q"), w + ".q"), *phi});
      }
    }
    s.fixed_at_capacity = json_int_list(tv, "fixed_at_capacity", "tv", false);
    s.excluded_primes = json_int_list(tv, "excluded_primes", "tv", false);
    if (tv.contains("enumeration_bound")) {
      BigInt b = json_int(tv.at("enumeration_bound"), "tv.enumeration_bound");
      if (b < 2 || b > 100000000) fail(Errc::schema, "tv.enumeration_bound: out of range");
      s.enumeration_bound = b.convert_to<std::uint64_t>();
    }
  }
  s.epsilon_linear = json_opt_num(j, "epsilon_linear", "");
  if (j.contains("regulator_correction")) {
    const json& rc = j.at("regulator_correction");
    if (!rc.is_object()) fail(Errc::schema, "regulator_correction: expected {r1, r2}");
    s.reg_r1 = json_opt_num(rc, "r1", "regulator_correction");
    s.reg_r2 = json_opt_num(rc, "r2", "regulator_correction");
  }
  s.coarse_B = json_opt_num(j, "coarse_B", "");
  s.g_override = json_opt_num(j, "g_override", "");
  s.C0 = json_opt_num(j, "C0", "");
  if (j.contains("expected")) s.expected = j.at("expected");
  if (j.contains("notes")) s.notes = j.at("notes");
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::schema, "cannot open scenario file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(Errc::schema, path + ": " + e.what());
  }
  return parse_scenario(j);
}

struct Report {
  json data;
  std::vector<std::string> conflicts;

  double num(const char* section, const char* key) const { return data.at(section).at(key).get<double>(); }
};

inline std::string bigstr(const BigInt& v) { return v.str(); }

inline Report run_scenario(const Scenario& sc) {
  Report rep;
  json& out = rep.data;
  out["version"] = kReportVersion;
  out["label"] = sc.label;
  out["p"] = bigstr(sc.p);

  FieldDescriptor k = quadratic_field(sc.d1);
  FieldDescriptor K = biquadratic_field(sc.d1, sc.d2);
  const double g_derived = genus(K);
  const double g = sc.g_override.value_or(g_derived);

  json jf;
  jf["label"] = K.label;
  jf["degree"] = K.degree;
  jf["r1"] = K.r1;
  jf["r2"] = K.r2;
  jf["abs_disc"] = bigstr(K.abs_disc());
  jf["sqrt_abs_disc"] = bigstr(sqrt(K.abs_disc()));
  jf["subfield_discs"] = json::array();
  for (const auto& q : K.subfields) jf["subfield_discs"].push_back(bigstr(q.disc));
  jf["g_derived"] = g_derived;
  jf["g_used"] = g;
  jf["g_override"] = sc.g_override ? json(*sc.g_override) : json(nullptr);
  jf["root_discriminant"] = root_discriminant(K);
  out["field"] = jf;
  if (sc.g_override && std::abs(*sc.g_override - g_derived) > 1e-9)
    rep.conflicts.push_back("g_override " + detail::fmt(*sc.g_override) + " differs from derived g " + detail::fmt(g_derived));

  // Base field and the T-split tower over it.
  const QuadraticData& qk = k.subfields.front();
  json jk;
  jk["label"] = k.label;
  jk["disc"] = bigstr(qk.disc);
  jk["r1"] = k.r1;
  jk["r2"] = k.r2;
  long rho_k = static_cast<long>(qk.disc_primes.size()) + (qk.disc < 0 ? 1 : 0);
  jk["rho"] = rho_k;
  out["base_field"] = jk;

  long t_dec = 0, t_in = 0, places_k = 0;
  json jt = json::object();
  jt["dec"] = json::array();
  jt["in"] = json::array();
  std::set<BigInt> T_primes;
  auto note_T = [&](const BigInt& ell, SplitType expect) {
    SplitType actual = qk.split(ell);
    T_primes.insert(ell);
    if (actual != expect)
      rep.conflicts.push_back("T prime " + ell.str() + " listed as " + split_name(expect) + " in k but is " + split_name(actual));
    if (actual == SplitType::Split) {
      ++t_dec;
      places_k += 2;
    } else {
      ++t_in;
      places_k += 1;
    }
  };
  for (const auto& ell : sc.T_dec) {
    note_T(ell, SplitType::Split);
    jt["dec"].push_back(bigstr(ell));
  }
  for (const auto& ell : sc.T_in) {
    note_T(ell, SplitType::Inert);
    jt["in"].push_back(bigstr(ell));
  }
  long t_total = t_dec + t_in;
  jt["t_dec"] = t_dec;
  jt["t_in"] = t_in;
  jt["t_total_rational"] = t_total;
  jt["places_of_k"] = places_k;
  out["T"] = jt;

  // Linear growth slope of d_p A(K_n) / [K_n : K].
  unsigned rho_ext = ramified_place_count(k, sc.d2, sc.p);
  double eps_derived = static_cast<double>(ershov_schmidt_ratio(rho_ext, k.r1, k.r2));
  double eps = sc.epsilon_linear.value_or(eps_derived);
  if (sc.epsilon_linear && std::abs(*sc.epsilon_linear - eps_derived) > 1e-12)
    rep.conflicts.push_back("epsilon_linear " + detail::fmt(*sc.epsilon_linear, 3) + " differs from derived " + detail::fmt(eps_derived, 3));

  json jc;
  jc["ramified_places_K_over_k"] = rho_ext;
  jc["epsilon_derived"] = eps_derived;
  jc["epsilon_pinned"] = sc.epsilon_linear ? json(*sc.epsilon_linear) : json(nullptr);
  jc["epsilon_used"] = eps;
  if (k.r1 == 2) {
    jc["critere_rational_count"] = critere_real_quadratic(rho_k, t_dec, t_total);
    jc["critere_place_count"] = critere_real_quadratic(rho_k, t_dec, std::max<long>(places_k, t_dec));
  } else {
    jc["critere_rational_count"] = nullptr;
    jc["critere_place_count"] = nullptr;
  }
  jc["genus_rank_bound_k"] = genus_rank_bound(rho_k, 1, 0, k.delta(sc.p));
  out["criteria"] = jc;

  // Tsfasman-Vladut problem.
  TVProblem pr;
  pr.x0 = sc.x0_g.value_or(K.r1) / g;
  pr.x1 = sc.x1_g.value_or(K.r2) / g;
  json fixed_j = json::array();
  std::set<BigInt> skip(T_primes.begin(), T_primes.end());
  std::set<BigInt> explicit_fixed;
  for (const auto& f : sc.fixed) {
    PrimePower q = prime_power_of(f.q);
    pr.fixed.push_back({q, f.phi_g / g});
    skip.insert(q.ell);
    explicit_fixed.insert(q.ell);
    fixed_j.push_back({{"q", bigstr(q.value)}, {"phi_g", f.phi_g}, {"source", "pinned"}});
  }
  for (const auto& ell : T_primes) {
    if (explicit_fixed.count(ell)) continue;
    NormCount nc = primes_above(K, ell).front();
    pr.fixed.push_back({nc.q, nc.count / g});
    fixed_j.push_back({{"q", bigstr(nc.q.value)}, {"phi_g", nc.count}, {"source", "T split completely"}});
  }
  for (const auto& ell : sc.fixed_at_capacity) {
    if (skip.count(ell)) continue;
    NormCount nc = primes_above(K, ell).front();
    double w = std::min(nc.count / g, pr.cap() / nc.q.m);
    pr.fixed.push_back({nc.q, w});
    skip.insert(ell);
    fixed_j.push_back({{"q", bigstr(nc.q.value)}, {"phi_g", w * g}, {"source", "fixed at capacity"}});
  }
  for (const auto& ell : sc.excluded_primes) {
    skip.insert(ell);
    NormCount nc = primes_above(K, ell).front();
    rep.conflicts.push_back("prime " + ell.str() + " (" + std::to_string(nc.count) + " primes of norm " + nc.q.value.str() +
                            ") excluded although the base field admits it");
  }

  json jtv;
  jtv["x0_g"] = pr.x0 * g;
  jtv["x1_g"] = pr.x1 * g;
  jtv["fixed"] = fixed_j;
  jtv["excluded_primes"] = json::array();
  for (const auto& e : sc.excluded_primes) jtv["excluded_primes"].push_back(bigstr(e));

  std::uint64_t used_bound = 0;
  TVSolution sol = optimize_over_field(K, pr, g, sc.enumeration_bound, skip, &used_bound);
  jtv["enumeration_bound"] = used_bound;
  jtv["budget"] = sol.budget;
  jtv["A"] = sol.budget * g;
  jtv["ell_star_0"] = sol.ell_star_0 ? json(sol.ell_star_0->value.convert_to<std::uint64_t>()) : json(nullptr);
  jtv["alpha"] = sol.alpha;
  jtv["weight_star_g"] = sol.weight_star * g;
  jtv["fixed_b"] = sol.fixed_b;
  jtv["sum_b_bound"] = sol.sum_b_bound;
  jtv["sum_b_bound_g"] = sol.sum_b_bound * g;
  jtv["B_upper"] = sol.B_upper;
  jtv["prefix_count"] = sol.prefix.size();
  long split_below = 0;
  if (sol.ell_star_0) {
    for (std::uint64_t ell : sieve_primes(std::max<std::uint64_t>(2, sol.ell_star_0->value.convert_to<std::uint64_t>() - 1))) {
      if (BigInt(ell) >= sol.ell_star_0->value) break;
      auto nc = primes_above(K, ell);
      if (nc.size() == 1 && nc.front().q.m == 1 && nc.front().count == K.degree) ++split_below;
    }
  }
  jtv["split_primes_below_ell_star_0"] = split_below;
  json prefix = json::array();
  for (const auto& c : sol.prefix) prefix.push_back({{"q", bigstr(c.q.value)}, {"w_g", c.w * g}});
  jtv["prefix"] = prefix;
  out["tv"] = jtv;

  // Final bounds.
  PlaceSet S, Sigma;
  for (const auto& n : sc.S_norms) S.places.push_back({n, std::nullopt, 1, false});
  for (const auto& n : sc.Sigma_norms) Sigma.places.push_back({n, std::nullopt, 1, false});
  double log_sqrt_KS = 0.5 * disc_with_tame_conductor(K, S, sc.p).log();
  if (sc.g_override && S.empty()) log_sqrt_KS = g;
  double aSigma = local_factor_sum(Sigma, sc.p);
  double r1c = sc.reg_r1.value_or(K.r1), r2c = sc.reg_r2.value_or(K.r2);
  json jb;
  jb["regulator_correction"] = {{"r1", r1c}, {"r2", r2c}};
  jb["signature"] = {{"r1", K.r1}, {"r2", K.r2}};
  jb["a_Sigma"] = aSigma;
  jb["epsilon"] = eps;
  if (sc.coarse_B) {
    double av = alpha_constant(*sc.coarse_B, log_sqrt_KS, r1c, r2c);
    jb["coarse_B"] = *sc.coarse_B;
    jb["coarse_bound"] = mean_exponent_upper(eps, sc.p, av, aSigma);
  } else {
    jb["coarse_B"] = nullptr;
    jb["coarse_bound"] = nullptr;
  }
  double av = alpha_constant(sol.B_upper, log_sqrt_KS, r1c, r2c);
  jb["alpha_value"] = av;
  jb["refined_bound"] = mean_exponent_upper(eps, sc.p, av, aSigma);
  jb["refined_bound_full_signature"] =
      mean_exponent_upper(eps, sc.p, alpha_constant(sol.B_upper, log_sqrt_KS, K.r1, K.r2), aSigma);
  if (sc.C0) {
    FactoredInt d{K.abs_disc_factored};
    jb["propmain_upper"] = propmain_upper(sc.C0, static_cast<long>(eps), sc.p, d);
  } else {
    jb["propmain_upper"] = nullptr;
  }
  out["bounds"] = jb;

  // Pinned reference figures against what was computed.
  json cmp = json::array();
  auto lookup = [&](const std::string& key) -> std::optional<double> {
    if (key == "g") return g;
    if (key == "A") return sol.budget * g;
    if (key == "ell_star_0" && sol.ell_star_0) return sol.ell_star_0->value.convert_to<double>();
    if (key == "alpha") return sol.alpha;
    if (key == "sum_b_bound") return sol.sum_b_bound * g;
    if (key == "B_upper") return sol.B_upper;
    if (key == "split_primes_below_ell_star_0") return static_cast<double>(split_below);
    if (key == "coarse_bound" && jb["coarse_bound"].is_number()) return jb["coarse_bound"].get<double>();
    if (key == "bound") return jb["refined_bound"].get<double>();
    if (key == "epsilon") return eps;
    return std::nullopt;
  };
  if (sc.expected.is_object()) {
    for (auto it = sc.expected.begin(); it != sc.expected.end(); ++it) {
      if (!it.value().is_number()) continue;
      auto v = lookup(it.key());
      json row = {{"key", it.key()}, {"expected", it.value()}};
      row["computed"] = v ? json(*v) : json(nullptr);
      row["delta"] = v ? json(*v - it.value().get<double>()) : json(nullptr);
      cmp.push_back(row);
    }
  }
  out["expected_comparison"] = cmp;
  out["pinned_inputs"] = {
      {"epsilon_linear", sc.epsilon_linear ? json(*sc.epsilon_linear) : json(nullptr)},
      {"g_override", sc.g_override ? json(*sc.g_override) : json(nullptr)},
      {"regulator_correction", (sc.reg_r1 || sc.reg_r2) ? json({{"r1", r1c}, {"r2", r2c}}) : json(nullptr)},
      {"fixed_at_capacity", json::array()},
      {"excluded_primes", jtv["excluded_primes"]},
      {"coarse_B", sc.coarse_B ? json(*sc.coarse_B) : json(nullptr)},
      {"C0", sc.C0 ? json(*sc.C0) : json(nullptr)}};
  for (const auto& e : sc.fixed_at_capacity) out["pinned_inputs"]["fixed_at_capacity"].push_back(bigstr(e));
  out["notes"] = sc.notes;
  out["conflicts"] = rep.conflicts;
  return rep;
}

inline std::string report_text(const Report& rep, int precision = 6) {
  using detail::fmt;
  const json& d = rep.data;
  std::ostringstream os;
  os << "scenario " << d["label"].get<std::string>() << "\n";
  os << "  K = " << d["field"]["label"].get<std::string>() << "  signature (" << d["field"]["r1"] << ","
     << d["field"]["r2"] << ")\n";
  os << "  sqrt|disc K| = " << d["field"]["sqrt_abs_disc"].get<std::string>() << "  g = "
     << fmt(d["field"]["g_used"].get<double>(), precision) << "\n";
  os << "  T: dec " << d["T"]["t_dec"] << ", in " << d["T"]["t_in"] << ", places of k " << d["T"]["places_of_k"]
     << "; rho(k) = " << d["base_field"]["rho"] << "\n";
  os << "  epsilon = " << d["criteria"]["epsilon_used"] << "  critere = " << d["criteria"]["critere_rational_count"]
     << "\n";
  const json& tv = d["tv"];
  os << "  TV: A = " << fmt(tv["A"].get<double>(), precision) << "  ell*_0 = " << tv["ell_star_0"]
     << "  alpha = " << fmt(tv["alpha"].get<double>(), precision) << "\n";
  os << "      g * sum b phi <= " << fmt(tv["sum_b_bound_g"].get<double>(), precision)
     << "  B <= " << fmt(tv["B_upper"].get<double>(), precision) << "  split primes below ell*_0: "
     << tv["split_primes_below_ell_star_0"] << "\n";
  const json& b = d["bounds"];
  if (b["coarse_bound"].is_number())
    os << "  coarse bound (B = " << b["coarse_B"] << "): " << fmt(b["coarse_bound"].get<double>(), precision) << "\n";
  os << "  refined bound: " << fmt(b["refined_bound"].get<double>(), precision) << "\n";
  for (const auto& row : d["expected_comparison"]) {
    os << "  expected " << row["key"].get<std::string>() << " = " << row["expected"];
    if (row["computed"].is_number()) os << "  computed " << fmt(row["computed"].get<double>(), precision);
    os << "\n";
  }
  for (const auto& c : rep.conflicts) os << "  conflict: " << c << "\n";
  return os.str();
}

}  // namespace meanexp
