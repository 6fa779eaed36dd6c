// ypq: verification suites, geodesic integration, rank and toric reports for
// the Y^{p,q} family. Exit codes: 0 pass, 1 check failure, 2 usage/config error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "ypq/dynamics.hpp"
#include "ypq/errors.hpp"
#include "ypq/parallel.hpp"
#include "ypq/params.hpp"
#include "ypq/sampling.hpp"
#include "ypq/suites.hpp"
#include "ypq/toric.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  int p = 2;
  int q = 1;
  std::uint64_t seed = 42;
  int samples = 100;
  double tol = 1e-7;
  double rtol = 1e-10;
  double atol = 1e-12;
  double t_end = 50.0;
  std::optional<int> points;
  std::string json_path;
  std::string csv_path;
  std::string init_path;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--p", cfg.p, "integer p of Y^{p,q}")->capture_default_str();
  cmd->add_option("--q", cfg.q, "integer q of Y^{p,q}")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "sample points per check")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "tolerance scale (1e-7 keeps the pinned tolerances)")->capture_default_str();
  cmd->add_option("--rtol", cfg.rtol, "integrator relative tolerance")->capture_default_str();
  cmd->add_option("--atol", cfg.atol, "integrator absolute tolerance")->capture_default_str();
  cmd->add_option("--t-end", cfg.t_end, "integration end time")->capture_default_str();
  cmd->add_option("--points", cfg.points, "states for rank, output samples for integrate");
  cmd->add_option("--json", cfg.json_path, "write the JSON report here (default: stdout)");
  cmd->add_option("--csv", cfg.csv_path, "write the trajectory CSV here");
  cmd->add_option("--init", cfg.init_path, "initial state JSON {\"x\": [5], \"P\": [5]}");
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(const auto& values) {
  json a = json::array();
  for (double v : values) a.push_back(num(v));
  return a;
}

void emit(const RunConfig& cfg, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.json_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.json_path, std::ios::binary);
  if (!f) throw ypq::ConfigError("cannot write " + cfg.json_path);
  f << text;
}

json config_json(const RunConfig& cfg) {
  return {{"p", cfg.p}, {"q", cfg.q}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"tol", cfg.tol},
          {"rtol", cfg.rtol}, {"atol", cfg.atol}, {"t_end", cfg.t_end}};
}

void validate(const RunConfig& cfg) {
  ypq::make_params(cfg.p, cfg.q);
  if (cfg.samples < 1) throw ypq::ConfigError("--samples must be positive");
  if (!(cfg.tol > 0.0)) throw ypq::ConfigError("--tol must be positive");
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw ypq::ConfigError("--rtol and --atol must be positive");
  if (!(cfg.t_end >= 0.0)) throw ypq::ConfigError("--t-end must be non-negative");
  if (cfg.points && *cfg.points < 1) throw ypq::ConfigError("--points must be positive");
}

int cmd_verify(const RunConfig& cfg) {
  ypq::suites::SuiteConfig sc;
  sc.p = cfg.p;
  sc.q = cfg.q;
  sc.seed = cfg.seed;
  sc.samples = cfg.samples;
  sc.tol = cfg.tol;
  sc.rtol = cfg.rtol;
  sc.atol = cfg.atol;
  sc.t_end = cfg.t_end;
  const auto res = ypq::suites::run_verify(sc);
  json checks = json::array();
  for (const auto& c : res.checks) {
    json j{{"name", c.name}, {"max_residual", num(c.max_residual)}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.error.empty()) j["error"] = c.error;
    checks.push_back(j);
  }
  json constants = json::object();
  for (const auto& [k, v] : res.constants) constants[k] = num(v);
  const bool pass = res.pass();
  emit(cfg, {{"command", "verify"}, {"config", config_json(cfg)}, {"checks", checks}, {"constants", constants}, {"pass", pass}});
  if (!cfg.json_path.empty()) {
    for (const auto& c : res.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.max_residual << " < " << c.tolerance << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

ypq::dyn::PhaseState read_init(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ypq::ConfigError("cannot read " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ypq::ConfigError(std::string("invalid init file: ") + e.what());
  }
  if (!j.contains("x") || !j.contains("P") || j["x"].size() != 5 || j["P"].size() != 5)
    throw ypq::ConfigError("init file needs arrays x[5] and P[5]");
  ypq::dyn::PhaseState s;
  for (int i = 0; i < 5; ++i) {
    s.x[i] = j["x"][i].get<double>();
    s.P[i] = j["P"][i].get<double>();
  }
  return s;
}

void write_csv(const std::string& path, const ypq::dyn::Trajectory& tr) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ypq::ConfigError("cannot write " + path);
  f << "t,theta,phi,y,alpha,psi,P_theta,P_phi,P_y,P_alpha,P_psi,H,P_phi_inv,P_psi_inv,P_alpha_inv,J2,K1,K4";
  for (const char* n : ypq::dyn::kInvariantNames) f << ",drift_" << n;
  f << "\n" << std::setprecision(17);
  for (const auto& s : tr.samples) {
    f << s.t;
    for (double v : s.s.x) f << "," << v;
    for (double v : s.s.P) f << "," << v;
    for (double v : s.inv) f << "," << v;
    for (double v : s.drift) f << "," << v;
    f << "\n";
  }
}

int cmd_integrate(const RunConfig& cfg) {
  const auto P = ypq::make_params(cfg.p, cfg.q);
  ypq::dyn::PhaseState s0;
  if (!cfg.init_path.empty()) {
    s0 = read_init(cfg.init_path);
    try {
      ypq::require_in_chart(P, s0.x);
    } catch (const ypq::OutOfChart& e) {
      throw ypq::ConfigError(e.what());
    }
  } else {
    ypq::Rng rng(cfg.seed);
    s0 = ypq::dyn::random_state(P, rng);
  }
  ypq::dyn::IntegrationOptions opt;
  opt.t_end = cfg.t_end;
  opt.rtol = cfg.rtol;
  opt.atol = cfg.atol;
  if (cfg.points) opt.samples = std::max(2, *cfg.points);
  const auto tr = ypq::dyn::integrate_geodesic(P, s0, opt);
  if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, tr);

  json drift = json::object();
  for (int k = 0; k < ypq::dyn::kNumInvariants; ++k) drift[ypq::dyn::kInvariantNames[k]] = num(tr.max_drift[k]);
  json exit_info = nullptr;
  if (tr.exit)
    exit_info = {{"t", tr.exit->t}, {"reason", tr.exit->reason}, {"x", num_array(tr.exit->s.x)}, {"P", num_array(tr.exit->s.P)}};
  json report{{"command", "integrate"},
              {"config", config_json(cfg)},
              {"initial", {{"x", num_array(s0.x)}, {"P", num_array(s0.P)}}},
              {"samples", tr.samples.size()},
              {"steps", tr.steps},
              {"t_final", tr.samples.empty() ? 0.0 : tr.samples.back().t},
              {"max_drift", drift},
              {"chart_exit", exit_info}};
  emit(cfg, report);
  return kExitPass;
}

int cmd_rank(const RunConfig& cfg) {
  const auto P = ypq::make_params(cfg.p, cfg.q);
  const int n = cfg.points.value_or(20);
  ypq::Rng rng(cfg.seed);
  const auto states = ypq::dyn::random_states(P, rng, static_cast<std::size_t>(n));
  const std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
  std::vector<ypq::dyn::RankResult> res(states.size());
  ypq::parallel_for(states.size(), [&](std::size_t i) { res[i] = ypq::dyn::jacobian_rank(P, states[i], all); });
  json per_state = json::array();
  bool all_five = true;
  int max_rank = 0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    per_state.push_back({{"x", num_array(states[i].x)},
                         {"P", num_array(states[i].P)},
                         {"singular_values", num_array(res[i].singular_values)},
                         {"rank", res[i].rank},
                         {"degenerate", res[i].degenerate}});
    max_rank = std::max(max_rank, res[i].rank);
    if (!res[i].degenerate && res[i].rank != 5) all_five = false;
  }
  const bool ok = all_five && max_rank <= 5;
  const std::string verdict = ok ? "completely integrable (rank 5 = dof)" : "rank differs from 5";
  emit(cfg, {{"command", "rank"},
             {"config", config_json(cfg)},
             {"relative_threshold", ypq::dyn::kRankRelTol},
             {"states", per_state},
             {"max_rank", max_rank},
             {"verdict", verdict},
             {"pass", ok}});
  return ok ? kExitPass : kExitFail;
}

int cmd_toric(const RunConfig& cfg) {
  const auto P = ypq::make_params(cfg.p, cfg.q);
  const auto model = ypq::toric::ypq_toric_model(P);
  ypq::Rng rng(cfg.seed);
  const auto pts = ypq::sample_cone_points(P, rng, static_cast<std::size_t>(cfg.samples));
  std::vector<ypq::toric::MomentPoint> ys;
  for (const auto& X : pts) ys.push_back(ypq::toric::momentum_map(P, X[ypq::kR], ypq::base_of(X)));
  std::vector<ypq::toric::LegendreResult> leg(ys.size());
  ypq::parallel_for(ys.size(), [&](std::size_t i) { leg[i] = ypq::toric::legendre_roundtrip(model, ys[i]); });
  double duality = 0.0, roundtrip = 0.0, det_product = 0.0;
  for (const auto& l : leg) {
    duality = std::max(duality, l.identity_residual);
    roundtrip = std::max(roundtrip, l.roundtrip);
    det_product = std::max(det_product, std::abs(l.det_product - 1.0));
  }
  const auto fit = ypq::toric::fit_det_constant(model, ys);
  const double scale = cfg.tol / ypq::suites::kDefaultTol;
  const double duality_tol = 1e-8 * scale;
  const double roundtrip_tol = 1e-9 * scale;
  const double det_tol = 1e-6 * scale;
  const bool ok = duality < duality_tol && roundtrip < roundtrip_tol && fit.rel_std < det_tol;

  json normals = json::array();
  for (const auto& v : model.normals) normals.push_back(num_array(v));
  emit(cfg, {{"command", "toric"},
             {"config", config_json(cfg)},
             {"model", {{"normals", normals}, {"reeb", num_array(model.reeb)}, {"mode", ypq::toric::mode_name(model.mode)}}},
             {"duality_residual", num(duality)},
             {"duality_tolerance", duality_tol},
             {"roundtrip_residual", num(roundtrip)},
             {"roundtrip_tolerance", roundtrip_tol},
             {"det_product_residual", num(det_product)},
             {"det_constant", {{"c", num(fit.c)}, {"rel_std", num(fit.rel_std)}, {"tolerance", det_tol}}},
             {"pass", ok}});
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Y^{p,q} geometry: verification suites, geodesics, rank and toric reports"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* verify = app.add_subcommand("verify", "run every verification suite");
  auto* integrate = app.add_subcommand("integrate", "integrate one geodesic");
  auto* rank = app.add_subcommand("rank", "Jacobian rank of the seven first integrals");
  auto* toric = app.add_subcommand("toric", "toric data and Legendre duality checks");
  for (auto* c : {verify, integrate, rank, toric}) add_common(c, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    validate(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*integrate) return cmd_integrate(cfg);
    if (*rank) return cmd_rank(cfg);
    if (*toric) return cmd_toric(cfg);
  } catch (const ypq::NotCoprime& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const ypq::OutOfRange& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const ypq::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
