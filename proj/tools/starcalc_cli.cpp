// starcalc command line: star products, star-Lie brackets, and the
// identity-verification suites with JSON reports.
//
// exit codes: 0 all checks pass, 1 some check failed, 2 usage/config error

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "starcalc/parse.hpp"
#include "starcalc/suites.hpp"

using json = nlohmann::ordered_json;
using namespace star;

namespace {

Rat json_rat(const json& v) {
  if (v.is_number_integer()) return Rat((long)v.get<long>());
  if (v.is_string()) return rat_parse(v.get<std::string>());
  throw std::invalid_argument("expected rational as integer or \"p/q\"");
}

std::vector<std::vector<Rat>> json_theta(const json& v, int dim) {
  std::vector<std::vector<Rat>> th(dim, std::vector<Rat>(dim, Rat(0)));
  if ((int)v.size() != dim) throw std::invalid_argument("theta must be dim x dim");
  for (int i = 0; i < dim; ++i) {
    if ((int)v[i].size() != dim)
      throw std::invalid_argument("theta must be dim x dim");
    for (int j = 0; j < dim; ++j) th[i][j] = json_rat(v[i][j]);
  }
  return th;
}

TwistSpec twist_from_json(const json& j) {
  std::string variant = j.value("variant", "moyal");
  int dim = j.value("dim", 2);
  auto names = default_names(dim);
  auto field = [&](const char* key, const VectorField& fallback) {
    if (!j.contains("fields") || !j["fields"].contains(key)) return fallback;
    std::vector<std::string> comps =
        j["fields"][key].get<std::vector<std::string>>();
    return parse_vector_field(comps, dim, names);
  };
  if (variant == "moyal") {
    std::vector<std::vector<Rat>> th(dim, std::vector<Rat>(dim, Rat(0)));
    if (j.contains("theta")) th = json_theta(j["theta"], dim);
    std::vector<VectorField> gens;
    if (j.contains("fields"))
      for (int mu = 0; mu < dim; ++mu) {
        std::string key = "t" + std::to_string(mu + 1);
        gens.push_back(field(key.c_str(), VectorField::frame(dim, mu)));
      }
    return TwistSpec::moyal(dim, th, gens);
  }
  if (variant == "jordanian") {
    TwistSpec d = TwistSpec::jordanian_default(dim);
    return TwistSpec::jordanian(field("H", d.H), field("E", d.E));
  }
  if (variant == "ext_jordanian") {
    TwistSpec d = TwistSpec::ext_jordanian_default(dim);
    Rat alpha = j.contains("alpha") ? json_rat(j["alpha"]) : d.alpha;
    Rat beta = j.contains("beta") ? json_rat(j["beta"]) : d.beta;
    return TwistSpec::ext_jordanian(field("H", d.H), field("E", d.E),
                                    field("A", d.A), field("B", d.B), alpha,
                                    beta);
  }
  throw std::invalid_argument("unknown twist variant '" + variant + "'");
}

std::string series_str(const FnSeries& s,
                       const std::vector<std::string>& names) {
  std::string outp;
  for (int k = 0; k <= s.order; ++k) {
    if (s.c[k].is_zero()) continue;
    if (!outp.empty()) outp += " + ";
    if (k == 0)
      outp += render(s.c[k], names);
    else
      outp += "L^" + std::to_string(k) + "*( " + render(s.c[k], names) +
              " )";
  }
  return outp.empty() ? "0" : outp;
}

std::string series_str(const VfSeries& s,
                       const std::vector<std::string>& names) {
  std::string outp;
  for (int k = 0; k <= s.order; ++k) {
    if (s.c[k].is_zero()) continue;
    if (!outp.empty()) outp += " + ";
    if (k == 0)
      outp += render(s.c[k], names);
    else
      outp += "L^" + std::to_string(k) + "*( " + render(s.c[k], names) +
              " )";
  }
  return outp.empty() ? "0" : outp;
}

int report_and_write(const std::vector<CheckRecord>& records,
                     const SuiteConfig& cfg, const std::string& out_path,
                     bool quiet) {
  int failed = 0;
  for (const auto& rec : records) {
    if (!rec.pass) ++failed;
    if (!quiet)
      std::cout << (rec.pass ? "PASS " : "FAIL ") << rec.id << " [" << rec.tag
                << "]" << "\n";
  }
  std::cout << (failed ? "FAILED " : "OK ") << records.size() - failed << "/"
            << records.size() << " checks passed\n";

  if (!out_path.empty()) {
    json checks = json::array();
    json wall = json::object();
    for (const auto& rec : records) {
      json c;
      c["id"] = rec.id;
      c["tag"] = rec.tag;
      c["inputs_digest"] = rec.inputs_digest;
      c["per_order_residual_terms"] = rec.per_order;
      c["status"] = rec.pass ? "pass" : "fail";
      checks.push_back(c);
      char buf[32];
      snprintf(buf, sizeof buf, "%.3f", rec.wall_ms);
      wall[rec.id] = buf;
    }
    json rep;
    rep["config"] = {{"suites", cfg.suites.empty() ? known_suites()
                                                   : cfg.suites},
                     {"order", cfg.order},
                     {"seed", cfg.seed},
                     {"eval_degree", cfg.eval_degree},
                     {"triples", cfg.triples},
                     {"lie_triples", cfg.lie_triples},
                     {"xd_elements", cfg.xd_elements},
                     {"connections", cfg.connections},
                     {"geometry_order", cfg.geometry_order},
                     {"mode_pairs", cfg.mode_pairs}};
    rep["checks"] = checks;
    rep["summary"] = {{"total", records.size()},
                      {"passed", records.size() - failed},
                      {"failed", failed}};
    // the only nondeterministic content, grouped so consumers can strip it
    rep["timing"] = {{"timestamp", (long)time(nullptr)},
                     {"wall_ms", wall}};
    std::string tmp = out_path + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      f << rep.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, out_path);
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact twist-deformed calculus verifier"};
  app.require_subcommand(1);

  int default_order = 4;
  if (const char* env = std::getenv("NC_ORDER")) default_order = atoi(env);

  // ---- star ----------------------------------------------------------------
  auto* cmd_star = app.add_subcommand("star", "star-product of two functions");
  int st_dim = 2, st_order = default_order;
  std::string st_theta = "0", st_f, st_g, st_family = "moyal";
  cmd_star->add_option("--dim", st_dim);
  cmd_star->add_option("--theta", st_theta,
                       "theta^{12} entry as a rational p/q");
  cmd_star->add_option("--order", st_order);
  cmd_star->add_option("--family", st_family,
                       "moyal | jordanian | ext_jordanian");
  cmd_star->add_option("--f", st_f)->required();
  cmd_star->add_option("--g", st_g)->required();

  // ---- bracket ---------------------------------------------------------------
  auto* cmd_bracket =
      app.add_subcommand("bracket", "star-Lie bracket of two vector fields");
  int br_dim = 2, br_order = default_order;
  std::string br_theta = "0", br_family = "moyal";
  std::vector<std::string> br_u, br_v;
  cmd_bracket->add_option("--dim", br_dim);
  cmd_bracket->add_option("--theta", br_theta);
  cmd_bracket->add_option("--order", br_order);
  cmd_bracket->add_option("--family", br_family);
  cmd_bracket->add_option("--u", br_u, "components of u")->required();
  cmd_bracket->add_option("--v", br_v, "components of v")->required();

  // ---- verify ----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run identity suites");
  std::vector<std::string> vf_suites;
  SuiteConfig cfg;
  cfg.order = default_order;
  std::string vf_out, vf_config;
  bool vf_quiet = false;
  std::string vf_scenario;
  cmd_verify->add_option("--suite", vf_suites,
                         "twist starcalc geometry poisson modes (default all)");
  cmd_verify->add_option("--family", cfg.family,
                         "restrict to one twist family, e.g. moyal");
  cmd_verify->add_option("--order", cfg.order);
  cmd_verify->add_option("--seed", cfg.seed);
  cmd_verify->add_option("--deg", cfg.eval_degree, "evaluation degree bound");
  cmd_verify->add_option("--triples", cfg.triples);
  cmd_verify->add_option("--connections", cfg.connections);
  cmd_verify->add_option("--scenario", vf_scenario,
                         "phase-space scenario file for the poisson checks");
  cmd_verify->add_option("--out", vf_out, "JSON report path");
  cmd_verify->add_option("--config", vf_config, "JSON config file");
  cmd_verify->add_flag("--quiet", vf_quiet);

  // ---- geometry ----------------------------------------------------------------
  auto* cmd_geometry =
      app.add_subcommand("geometry", "check a connection scenario file");
  std::string ge_scenario, ge_out;
  cmd_geometry->add_option("--scenario", ge_scenario)->required();
  cmd_geometry->add_option("--out", ge_out);

  // ---- modes ----------------------------------------------------------------
  auto* cmd_modes =
      app.add_subcommand("modes", "check a mode-lattice scenario file");
  std::string mo_scenario, mo_out;
  cmd_modes->add_option("--scenario", mo_scenario)->required();
  cmd_modes->add_option("--out", mo_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_star->parsed()) {
      std::vector<std::vector<Rat>> th(st_dim,
                                       std::vector<Rat>(st_dim, Rat(0)));
      if (st_dim >= 2) {
        th[0][1] = rat_parse(st_theta);
        th[1][0] = -th[0][1];
      }
      TwistSpec spec =
          st_family == "moyal" ? TwistSpec::moyal(st_dim, th)
          : st_family == "jordanian"
              ? TwistSpec::jordanian_default(st_dim)
              : TwistSpec::ext_jordanian_default(st_dim);
      StarContext ctx(spec, st_order);
      auto names = default_names(st_dim);
      FunctionExpr f = parse_function(st_f, st_dim, names);
      FunctionExpr g = parse_function(st_g, st_dim, names);
      std::cout << series_str(star_fn(f, g, ctx), names) << "\n";
      return 0;
    }
    if (cmd_bracket->parsed()) {
      std::vector<std::vector<Rat>> th(br_dim,
                                       std::vector<Rat>(br_dim, Rat(0)));
      if (br_dim >= 2) {
        th[0][1] = rat_parse(br_theta);
        th[1][0] = -th[0][1];
      }
      TwistSpec spec =
          br_family == "moyal" ? TwistSpec::moyal(br_dim, th)
          : br_family == "jordanian"
              ? TwistSpec::jordanian_default(br_dim)
              : TwistSpec::ext_jordanian_default(br_dim);
      StarContext ctx(spec, br_order);
      auto names = default_names(br_dim);
      VectorField u = parse_vector_field(br_u, br_dim, names);
      VectorField v = parse_vector_field(br_v, br_dim, names);
      std::cout << series_str(star_lie_bracket(u, v, ctx), names) << "\n";
      return 0;
    }
    if (cmd_verify->parsed()) {
      if (!vf_config.empty()) {
        std::ifstream f(vf_config);
        if (!f) throw std::invalid_argument("cannot read " + vf_config);
        json j = json::parse(f);
        if (j.contains("order")) cfg.order = j["order"];
        if (j.contains("seed")) cfg.seed = j["seed"];
        if (j.contains("eval_degree")) cfg.eval_degree = j["eval_degree"];
        if (j.contains("triples")) cfg.triples = j["triples"];
        if (j.contains("connections")) cfg.connections = j["connections"];
        if (j.contains("suites"))
          vf_suites = j["suites"].get<std::vector<std::string>>();
        if (j.contains("out") && vf_out.empty())
          vf_out = j["out"].get<std::string>();
      }
      for (const auto& s : vf_suites) {
        bool known = false;
        for (const auto& k : known_suites())
          if (k == s) known = true;
        if (!known) throw std::invalid_argument("unknown suite '" + s + "'");
      }
      if (cfg.order < 1)
        throw std::invalid_argument("truncation order must be >= 1");
      cfg.suites = vf_suites;
      if (cmd_verify->count("--order")) cfg.geometry_order = cfg.order;
      std::vector<CheckRecord> records;
      if (!vf_scenario.empty()) {
        std::ifstream f(vf_scenario);
        if (!f) throw std::invalid_argument("cannot read " + vf_scenario);
        json j = json::parse(f);
        PhaseScenario sc;
        sc.n = j.value("n", 2);
        auto names = phase_space_names(sc.n);
        sc.theta.assign(sc.n, std::vector<Rat>(sc.n, Rat(0)));
        if (j.contains("theta")) sc.theta = json_theta(j["theta"], sc.n);
        sc.hamiltonian = parse_function(
            j.value("hamiltonian", std::string("0")), 2 * sc.n, names);
        if (j.contains("observables"))
          for (const auto& o : j["observables"])
            sc.observables.push_back(
                parse_function(o.get<std::string>(), 2 * sc.n, names));
        records = run_poisson_scenario(sc, cfg);
        if (!vf_suites.empty()) {
          auto more = run_suites(cfg);
          records.insert(records.end(), more.begin(), more.end());
        }
      } else {
        records = run_suites(cfg);
      }
      return report_and_write(records, cfg, vf_out, vf_quiet);
    }
    if (cmd_geometry->parsed()) {
      std::ifstream f(ge_scenario);
      if (!f) throw std::invalid_argument("cannot read " + ge_scenario);
      json j = json::parse(f);
      int dim = j.value("dim", 3);
      int order = j.value("order", 3);
      if (const char* env = std::getenv("NC_ORDER")) order = atoi(env);
      TwistSpec spec = j.contains("twist") ? twist_from_json(j["twist"])
                                           : TwistSpec::identity(dim);
      if (spec.dim != dim)
        throw std::invalid_argument("twist and scenario dimensions differ");
      StarContext ctx(spec, order);
      FrameConnection conn(dim, order);
      auto names = default_names(dim);
      if (j.contains("gamma"))
        for (auto it = j["gamma"].begin(); it != j["gamma"].end(); ++it) {
          int i, jj, k;
          if (sscanf(it.key().c_str(), "%d,%d,%d", &i, &jj, &k) != 3)
            throw std::invalid_argument("gamma key must be \"i,j,k\"");
          conn.G(i - 1, jj - 1, k - 1) = lift(
              parse_function(it.value().get<std::string>(), dim, names),
              order);
        }
      GeomReport rep = structure_residuals(conn, ctx);
      json out;
      out["scenario"] = ge_scenario;
      int failed = 0;
      for (const auto& [name, prof] : rep.residuals) {
        bool ok = true;
        for (long v : prof)
          if (v) ok = false;
        if (!ok) ++failed;
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        out["identities"][name] = {{"per_order_residual_terms", prof},
                                   {"status", ok ? "pass" : "fail"}};
      }
      if (!ge_out.empty()) {
        std::ofstream o(ge_out, std::ios::binary);
        o << out.dump(2) << "\n";
      }
      return failed ? 1 : 0;
    }
    if (cmd_modes->parsed()) {
      std::ifstream f(mo_scenario);
      if (!f) throw std::invalid_argument("cannot read " + mo_scenario);
      json j = json::parse(f);
      int d = j.value("d", 2);
      std::vector<Momentum> ks;
      for (const auto& m : j["momenta"]) ks.push_back(m.get<Momentum>());
      bool theta_on = true;
      if (j.contains("theta")) {
        if (j["theta"].is_string())
          theta_on = j["theta"].get<std::string>() == "sym";
        else
          theta_on = false;
      }
      std::map<Momentum, Rat> energies;
      if (j.contains("E"))
        for (auto it = j["E"].begin(); it != j["E"].end(); ++it) {
          Momentum k;
          std::string key = it.key();
          size_t p = 0;
          while (p < key.size()) {
            size_t q = key.find(',', p);
            if (q == std::string::npos) q = key.size();
            k.push_back(std::stoi(key.substr(p, q - p)));
            p = q + 1;
          }
          energies[k] = json_rat(it.value());
        }
      ModeLattice lat(d, ks, theta_on, energies);
      int failed = 0;
      json out;
      auto emit = [&](const std::string& name, bool ok, long residual) {
        if (!ok) ++failed;
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        out["checks"][name] = {{"residual_terms", residual},
                               {"status", ok ? "pass" : "fail"}};
      };
      FieldBracketReport fb = field_bracket_check(lat);
      emit("field_bracket(PBfipi)", fb.pass(), fb.residual_terms);
      bool ccr_ok = true;
      long ccr_res = 0;
      for (const auto& ka : lat.momenta)
        for (const auto& kb : lat.momenta) {
          QuantumElement c = star_commutator(QuantumElement::op_a(ka),
                                             QuantumElement::op_adag(kb),
                                             lat);
          QuantumElement expect =
              ka == kb ? QuantumElement::one() : QuantumElement::zero();
          QuantumElement res = c - expect;
          ccr_res += res.term_count();
          if (!res.is_zero()) ccr_ok = false;
        }
      emit("star_ccr(ppp)", ccr_ok, ccr_res);
      bool corr_ok = true;
      long corr_res = 0;
      Rng rng(j.value("seed", 42));
      for (int t = 0; t < 20; ++t) {
        ClassicalModePoly a = random_mode_monomial(rng, lat, 4);
        ClassicalModePoly b = random_mode_monomial(rng, lat, 4);
        CorrespondenceReport r = correspondence_residual(a, b, lat);
        if (!r.leading_vanishes) corr_ok = false;
        corr_res += r.residual.term_count();
      }
      emit("correspondence(5.9)", corr_ok, corr_res);
      if (!mo_out.empty()) {
        std::ofstream o(mo_out, std::ios::binary);
        o << out.dump(2) << "\n";
      }
      return failed ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
