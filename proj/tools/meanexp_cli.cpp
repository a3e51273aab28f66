// Command-line front end for the meanexp library.

#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meanexp/meanexp.hpp"

#ifndef MEANEXP_SCENARIO_DIR
#define MEANEXP_SCENARIO_DIR "scenarios"
#endif

using namespace meanexp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;
constexpr int kExitUnknownCommand = 64;

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::infeasible:
    case Errc::needs_larger_enumeration: return kExitInfeasible;
    case Errc::internal:
    case Errc::inconsistent: return kExitInternal;
    default: return kExitSchema;
  }
}

struct Globals {
  bool json_out = false;
  int precision = 6;
  std::uint64_t seed = 0;
  std::string scenario_dir = MEANEXP_SCENARIO_DIR;
  bool all_examples = false;
};

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string num(double v, int prec) { return detail::fmt(v, prec); }

// "p:2,exps:3,1" or {"p":2,"exps":[3,1]}.
AbelianPShape parse_shape(const std::string& s) {
  if (!s.empty() && s.front() == '{') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::parse_error& e) {
      fail(Errc::schema, std::string("shape: ") + e.what());
    }
    std::vector<unsigned> exps;
    for (const auto& e : j.at("exps")) exps.push_back(e.get<unsigned>());
    return AbelianPShape(BigInt(j.at("p").get<long long>()), exps);
  }
  BigInt p = 0;
  std::vector<unsigned> exps;
  bool in_exps = false;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      if (tok.rfind("p:", 0) == 0) {
        p = BigInt(tok.substr(2));
        in_exps = false;
      } else if (tok.rfind("exps:", 0) == 0) {
        in_exps = true;
        if (tok.size() > 5) exps.push_back(static_cast<unsigned>(std::stoul(tok.substr(5))));
      } else if (in_exps) {
        exps.push_back(static_cast<unsigned>(std::stoul(tok)));
      } else {
        fail(Errc::schema, "shape: unexpected token '" + tok + "'");
      }
    } catch (const std::logic_error&) {
      fail(Errc::schema, "shape: bad number in '" + tok + "'");
    }
  }
  if (!is_prime(p)) fail(Errc::schema, "shape: p missing or not prime");
  return AbelianPShape(p, exps);
}

json shape_json(const AbelianPShape& a) {
  json j;
  j["p"] = a.p.convert_to<long long>();
  j["exps"] = a.exps;
  return j;
}

std::string scenario_path(const Globals& g, const std::string& which) {
  std::string name = which == "intro" ? "paper-intro" : "paper-ex" + which;
  if (which != "intro" && (which.size() != 1 || which[0] < '1' || which[0] > '5'))
    fail(Errc::schema, "paper-example expects 1..5 or intro, got '" + which + "'");
  return g.scenario_dir + "/" + name + ".json";
}

int run_report(const Globals& g, const std::string& path) {
  Report r = run_scenario(load_scenario(path));
  emit(g, r.data, report_text(r, g.precision));
  return kExitOk;
}

int run_all_examples(const Globals& g) {
  std::vector<std::string> names = {"1", "2", "3", "4", "5", "intro"};
  std::vector<std::future<Report>> jobs;
  for (const auto& n : names) {
    std::string path = scenario_path(g, n);
    jobs.push_back(std::async(std::launch::async, [path] { return run_scenario(load_scenario(path)); }));
  }
  json all = json::array();
  std::string text;
  for (auto& j : jobs) {
    Report r = j.get();
    all.push_back(r.data);
    text += report_text(r, g.precision);
  }
  emit(g, all, text);
  return kExitOk;
}

json witness_json(const WitnessReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n},
                    {"index_log", r.index_log},
                    {"window_rank", r.window_rank},
                    {"rhs", r.rhs},
                    {"satisfied", r.satisfied},
                    {"regime", r.regime},
                    {"log10_index_log", r.log10_index_log},
                    {"log10_window_rank", r.log10_window_rank},
                    {"log10_rhs", r.log10_rhs}});
  }
  return {{"gs_typical", rep.gs_typical}, {"rows", rows}};
}

std::vector<std::string> to_strings(const std::vector<BigInt>& v, std::size_t from = 0) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < v.size(); ++i) out.push_back(v[i].str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"Mean exponents of class groups in towers of number fields"};
  app.fallthrough();
  app.add_flag("--json", g.json_out, "Emit JSON on stdout");
  app.add_option("--precision", g.precision, "Digits after the decimal point in text output")->check(CLI::Range(0, 17));
  app.add_option("--seed", g.seed, "Seed reserved for randomised checks");
  app.add_option("--scenario-dir", g.scenario_dir, "Directory holding the example scenarios");
  app.add_flag("--all-examples", g.all_examples, "Run every shipped example scenario");
  app.require_subcommand(0, 1);

  auto* me = app.add_subcommand("mean-exponent", "Mean exponent of a finite abelian p-group");
  std::string shape_arg;
  me->add_option("--shape", shape_arg, "p:2,exps:3,1 or JSON")->required();

  auto* gb = app.add_subcommand("genus-bound", "Genus theory lower bound for the p-rank");
  long rho = 0, r1 = 1, r2 = 0, delta = 1;
  gb->add_option("--rho", rho, "Ramified places")->required();
  gb->add_option("--r1", r1, "Real places of the base");
  gb->add_option("--r2", r2, "Complex places of the base");
  gb->add_option("--delta", delta, "1 if the base contains the p-th roots of unity");

  auto* gs = app.add_subcommand("gs-check", "Golod-Shafarevich verdict");
  long d = 0, r_upper = -1, t = 0, delta_sp = 0;
  gs->add_option("--d", d, "Generator rank")->required();
  gs->add_option("--r-upper", r_upper, "Upper bound on the relation rank");
  gs->add_option("--r1", r1, "Real places (with --t, builds the relation bound)");
  gs->add_option("--r2", r2, "Complex places");
  gs->add_option("--t", t, "|T|");
  gs->add_option("--delta-sp", delta_sp, "delta_{S,p}");

  auto* cr = app.add_subcommand("critere", "Infinite T-split 2-tower criterion over a real quadratic field");
  long t_dec = 0, t_total = 0;
  cr->add_option("--rho", rho, "Ramified primes of k")->required();
  cr->add_option("--t-dec", t_dec, "Split primes in T")->required();
  cr->add_option("--t-total", t_total, "|T|")->required();

  auto* tvb = app.add_subcommand("tv-bound", "Run a scenario file");
  std::string scenario_file;
  tvb->add_option("--scenario", scenario_file, "Scenario JSON")->required();

  auto* pe = app.add_subcommand("paper-example", "Run a shipped example scenario");
  std::string which;
  pe->add_option("which", which, "1..5 or intro");

  auto* pg = app.add_subcommand("propgroup", "Golod-Shafarevich type pro-p groups");
  std::string pg_mode;
  unsigned pd = 4, pr = 4, pN = 8;
  long long pp = 3;
  double peps = 0.5;
  std::vector<unsigned> pdeg;
  pg->add_option("mode", pg_mode, "series | ranks | witnesses")
      ->required()
      ->check(CLI::IsMember({"series", "ranks", "witnesses"}));
  pg->add_option("--d", pd, "Generator rank");
  pg->add_option("--r", pr, "Relation rank");
  pg->add_option("--p", pp, "Prime");
  pg->add_option("--N", pN, "Order (series, ranks) or largest n (witnesses)");
  pg->add_option("--eps", peps, "Epsilon for witnesses");
  pg->add_option("--degrees", pdeg, "Relation degrees (default all 2)");

  auto* orc = app.add_subcommand("oracle", "Brute-force class groups");
  std::string orc_mode;
  long long disc = 0;
  orc->add_option("mode", orc_mode, "class-group")->required()->check(CLI::IsMember({"class-group"}));
  orc->add_option("--disc", disc, "Negative discriminant")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    std::cerr << "unknown subcommand or argument: " << e.what() << "\n";
    return kExitUnknownCommand;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSchema;
  }

  try {
    if (g.all_examples) return run_all_examples(g);
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kExitUnknownCommand;
    }

    if (*me) {
      AbelianPShape a = parse_shape(shape_arg);
      Rational m = mean_exponent(a);
      json j = shape_json(a);
      j["mean_exponent"] = m.convert_to<double>();
      j["mean_exponent_exact"] = m.str();
      j["exponent"] = exponent(a);
      j["rank"] = rank(a);
      j["order_log"] = order_log(a);
      emit(g, j, "M_A = " + m.str() + " (" + num(m.convert_to<double>(), g.precision) + ")\n");
    } else if (*gb) {
      i64 v = genus_rank_bound(rho, r1, r2, delta);
      emit(g, json{{"rho", rho}, {"r1", r1}, {"r2", r2}, {"delta", delta}, {"rank_lower_bound", v}},
           "d_p A >= " + std::to_string(v) + "\n");
    } else if (*gs) {
      json j{{"d", d}};
      if (r_upper < 0) {
        r_upper = shafarevich_relation_upper(d, r1, r2, t, delta_sp);
        j["r_upper_source"] = "d + r1 + r2 - 1 + delta_Sp + |T|";
      }
      GSVerdict v = gs_verdict(d, r_upper);
      j["r_upper"] = r_upper;
      j["finite_requires_r_at_least"] = gs_finite_requires(d);
      j["verdict"] = verdict_name(v);
      emit(g, j, std::string("verdict: ") + verdict_name(v) + " (r <= " + std::to_string(r_upper) + ", d = " +
                     std::to_string(d) + ")\n");
    } else if (*cr) {
      bool ok = critere_real_quadratic(rho, t_dec, t_total);
      emit(g, json{{"rho", rho}, {"t_dec", t_dec}, {"t_total", t_total}, {"infinite", ok}},
           std::string("criterion ") + (ok ? "holds" : "fails") + "\n");
    } else if (*tvb) {
      return run_report(g, scenario_file);
    } else if (*pe) {
      if (which.empty()) fail(Errc::schema, "paper-example needs 1..5 or intro");
      return run_report(g, scenario_path(g, which));
    } else if (*pg) {
      GSGroupParams params{pd, pr, BigInt(pp), pdeg};
      if (!is_prime(params.p)) fail(Errc::schema, "--p must be prime");
      if (pg_mode == "series") {
        auto s = gs_series(params, pN);
        auto v = to_strings(s.coeffs);
        std::string text;
        for (const auto& c : v) text += c + " ";
        emit(g, json{{"d", pd}, {"r", pr}, {"coeffs", v}}, text + "\n");
      } else if (pg_mode == "ranks") {
        auto z = zassenhaus_ranks(gs_series(params, pN), params.p, pN);
        auto v = to_strings(z.b);
        std::string text;
        for (const auto& c : v) text += c + " ";
        emit(g, json{{"d", pd}, {"r", pr}, {"p", pp}, {"b", v}}, text + "\n");
      } else {
        WitnessReport rep = theo2_witnesses(params, peps, pN);
        std::ostringstream os;
        if (!rep.gs_typical) os << "note: parameters are not of Golod-Shafarevich type (d^2 >= 4r, r >= d)\n";
        for (const auto& r : rep.rows)
          os << "n=" << r.n << " index_log=" << r.index_log << " window_rank=" << r.window_rank << " rhs=" << r.rhs
             << " " << (r.satisfied ? "satisfied" : "not satisfied") << " [" << r.regime << "]\n";
        emit(g, witness_json(rep), os.str());
      }
    } else if (*orc) {
      ClassGroup cg = class_group_structure(disc);
      json shapes = json::array();
      std::ostringstream os;
      os << "h(" << disc << ") = " << cg.h << "\n";
      for (const auto& [p, sh] : cg.sylow) {
        json s = shape_json(sh);
        s["mean_exponent"] = mean_exponent(sh).convert_to<double>();
        shapes.push_back(s);
        os << "  p = " << p << ": exps [";
        for (std::size_t i = 0; i < sh.exps.size(); ++i) os << (i ? "," : "") << sh.exps[i];
        os << "] mean " << num(mean_exponent(sh).convert_to<double>(), g.precision) << "\n";
      }
      emit(g, json{{"disc", disc}, {"h", cg.h}, {"two_rank", rank(cg.sylow_at(2))}, {"shapes", shapes}}, os.str());
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
