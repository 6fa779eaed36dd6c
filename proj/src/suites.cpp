#include "ypq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ypq/cone.hpp"
#include "ypq/dynamics.hpp"
#include "ypq/errors.hpp"
#include "ypq/geometry.hpp"
#include "ypq/parallel.hpp"
#include "ypq/sampling.hpp"
#include "ypq/toric.hpp"
#include "ypq/ypq.hpp"

namespace ypq::suites {

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check run_check(const std::string& name, double base_tol, const SuiteConfig& cfg, const std::function<double()>& fn) {
  Check c;
  c.name = name;
  c.tolerance = base_tol * (cfg.tol / kDefaultTol);
  try {
    c.max_residual = fn();
    c.pass = c.max_residual < c.tolerance;
  } catch (const std::exception& e) {
    c.max_residual = std::numeric_limits<double>::quiet_NaN();
    c.pass = false;
    c.error = e.what();
  }
  return c;
}

namespace {

Rng suite_rng(const SuiteConfig& cfg, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

std::size_t capped(const SuiteConfig& cfg, std::size_t cap) {
  return std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.samples, 2)), cap);
}

// max over i of fn(i), evaluated in parallel.
double parallel_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  std::vector<double> r(n, 0.0);
  parallel_for(n, [&](std::size_t i) { r[i] = fn(i); });
  double m = 0.0;
  for (double v : r) m = std::isnan(v) ? v : std::max(m, v);
  return m;
}

template <int N>
double max_abs_mat(const Mat<double, N>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

double rel_std(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / n) / std::abs(mean);
}

double std_dev(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / n);
}

}  // namespace

void params_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  out.checks.push_back(run_check("params.cubic_roots", 1e-12, cfg, [&] {
    return std::max({std::abs(cubic(P, P.y1)), std::abs(cubic(P, P.y2)), std::abs(cubic(P, P.y3))});
  }));
  out.checks.push_back(run_check("params.vieta_sum", 1e-12, cfg, [&] { return std::abs(P.y1 + P.y2 + P.y3 - 1.5); }));
  out.checks.push_back(run_check("params.a_times_p", 1e-10, cfg, [&] {
    Rng rng = suite_rng(cfg, 1);
    const MetricFunctions fn{P};
    double m = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double y = uniform(rng, P.y1 + kInteriorMargin, P.y2 - kInteriorMargin);
      m = std::max(m, std::abs(fn.a(y) * fn.p(y) + 1.0 / (2.0 * P.ell)));
    }
    return m;
  }));
  out.checks.push_back(run_check("toric.v5_definitions", 1e-14, cfg, [&] {
    const auto model = toric::ypq_toric_model(P);
    const toric::V3 printed{1.0, -1.0, -0.5 * P.p + 1.5 * P.q - 1.0 / (2.0 * P.ell)};
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(model.normals[4][i] - printed[i]));
    return m;
  }));
  out.checks.push_back(run_check("ypq.eta_of_reeb", 1e-15, cfg, [&] {
    Rng rng = suite_rng(cfg, 2);
    const auto B = reeb_at(P);
    double m = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto eta = eta_at(P, sample_base_point(P, rng));
      double v = 0.0;
      for (int k = 0; k < 5; ++k) v += eta[k] * B[k];
      m = std::max(m, std::abs(v - 1.0));
    }
    return m;
  }));
}

void einstein_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 10);
  const auto pts = sample_base_points(P, rng, static_cast<std::size_t>(std::max(cfg.samples, 1)));
  out.checks.push_back(run_check("ypq.einstein", 1e-7, cfg, [&] {
    return parallel_max(pts.size(), [&](std::size_t i) {
      const auto g = YpqMetric{P}(pts[i]);
      const auto ric = ricci_at(P, pts[i]);
      double r = 0.0;
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) r = std::max(r, std::abs(ric[a][b] - 4.0 * g[a][b]));
      return r;
    });
  }));
  out.checks.push_back(run_check("ypq.isometries", 1e-8, cfg, [&] {
    std::array<Vec<double, 5>, 4> fields{};
    fields[0][kPhi] = 1.0;
    fields[1][kPsi] = 1.0;
    fields[2][kAlpha] = 1.0;
    fields[3] = reeb_at(P);
    return parallel_max(std::min<std::size_t>(pts.size(), 50), [&](std::size_t i) {
      double r = 0.0;
      for (const auto& X : fields) r = std::max(r, geom::killing_vector_residual<5>(YpqMetric{P}, X, pts[i]));
      return r;
    });
  }));
  out.checks.push_back(run_check("ypq.reeb_dual_to_eta", 1e-10, cfg, [&] {
    double r = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(pts.size(), 50); ++i) {
      const auto gB = matvec<double, 5>(YpqMetric{P}(pts[i]), reeb_at(P));
      const auto eta = eta_at(P, pts[i]);
      for (int k = 0; k < 5; ++k) r = std::max(r, std::abs(gB[k] - eta[k]));
    }
    return r;
  }));
  out.checks.push_back(run_check("ypq.psi2_volume_ratio", 1e-8, cfg, [&] {
    std::vector<double> ratio;
    for (std::size_t i = 0; i < std::min<std::size_t>(pts.size(), 50); ++i)
      ratio.push_back(special_forms(P, pts[i]).psi2[0] / volume_form(P, pts[i])[0]);
    return rel_std(ratio);
  }));
}

void killing_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 20);
  const auto pts = sample_base_points(P, rng, capped(cfg, 50));
  const YpqMetric g{P};
  auto ky = [&](const std::string& name, const auto& field) {
    out.checks.push_back(run_check("killing_yano." + name, 1e-7, cfg, [&] {
      return parallel_max(pts.size(), [&](std::size_t i) { return geom::killing_yano_residual<5>(g, field, pts[i]); });
    }));
  };
  ky("eta", EtaField{P});
  ky("psi1", Psi1Field{P});
  ky("re_psi", KillingTwoFormField{P, Part::Re});
  ky("im_psi", KillingTwoFormField{P, Part::Im});

  const std::size_t nfit = std::min<std::size_t>(pts.size(), 20);
  const std::span<const geom::Point<5>> fit_pts(pts.data(), nfit);
  double c_re = std::numeric_limits<double>::quiet_NaN();
  double c_im = std::numeric_limits<double>::quiet_NaN();
  auto sk = [&](const std::string& name, const auto& field, double* c_out) {
    out.checks.push_back(run_check("special_killing." + name, 1e-6, cfg, [&] {
      const auto fit = geom::special_killing_fit<5>(g, field, fit_pts);
      out.constants["special_killing_c." + name] = fit.c;
      if (c_out) *c_out = fit.c;
      return fit.c_rel_std;
    }));
  };
  sk("eta", EtaField{P}, nullptr);
  sk("psi1", Psi1Field{P}, nullptr);
  sk("re_psi", KillingTwoFormField{P, Part::Re}, &c_re);
  sk("im_psi", KillingTwoFormField{P, Part::Im}, &c_im);
  out.checks.push_back(run_check("special_killing.re_im_agree", 1e-6, cfg, [&] { return std::abs(c_re - c_im); }));

  out.checks.push_back(run_check("forms.dd_zero", 1e-9, cfg, [&] {
    return parallel_max(pts.size(), [&](std::size_t i) {
      double r = 0.0;
      auto dd = [&](const auto& field) {
        const auto f = geom::evaluate_form<5>(field, pts[i]);
        const auto df = geom::exterior_derivative_jet<5>(f);
        r = std::max(r, max_abs(geom::exterior_derivative<5>(df)));
      };
      dd(EtaField{P});
      dd(Psi1Field{P});
      dd(KillingTwoFormField{P, Part::Re});
      dd(KillingTwoFormField{P, Part::Im});
      return r;
    });
  }));
  out.checks.push_back(run_check("forms.psi1_is_9_eta_deta", 1e-10, cfg, [&] {
    double r = 0.0;
    for (const auto& x : pts) {
      const auto s = special_forms(P, x);
      r = std::max(r, max_abs_diff(s.psi1, 9.0 * wedge(eta_at(P, x), s.phi1)));
    }
    return r;
  }));
}

void cone_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 30);
  const auto pts = sample_cone_points(P, rng, capped(cfg, 50));
  const cone::ConeMetric gc{P};
  out.checks.push_back(run_check("cone.ricci_flat", 1e-6, cfg, [&] {
    return parallel_max(pts.size(), [&](std::size_t i) { return max_abs_mat<6>(cone::cone_ricci_at(P, pts[i])); });
  }));
  auto parallel_check = [&](const std::string& name, const auto& field, double tol) {
    out.checks.push_back(run_check(name, tol, cfg, [&] {
      return parallel_max(pts.size(), [&](std::size_t i) {
        const auto m = geom::evaluate_metric<6>(gc, pts[i]);
        return geom::covariant_derivative_form<6>(m, geom::evaluate_form<6>(field, pts[i])).max_abs();
      });
    }));
  };
  auto closed_check = [&](const std::string& name, const auto& field, double tol) {
    out.checks.push_back(run_check(name, tol, cfg, [&] {
      return parallel_max(pts.size(), [&](std::size_t i) {
        return max_abs(geom::exterior_derivative<6>(geom::evaluate_form<6>(field, pts[i])));
      });
    }));
  };
  parallel_check("cone.lift_re_psi_parallel", cone::lifted(KillingTwoFormField{P, Part::Re}), 1e-6);
  parallel_check("cone.lift_im_psi_parallel", cone::lifted(KillingTwoFormField{P, Part::Im}), 1e-6);
  parallel_check("cone.kahler_form_parallel", cone::lifted(EtaField{P}), 1e-7);
  closed_check("cone.kahler_form_closed", cone::lifted(EtaField{P}), 1e-7);
  parallel_check("cone.omega_re_parallel", cone::HolomorphicVolumeField{P, Part::Re}, 1e-6);
  parallel_check("cone.omega_im_parallel", cone::HolomorphicVolumeField{P, Part::Im}, 1e-6);
  closed_check("cone.omega_re_closed", cone::HolomorphicVolumeField{P, Part::Re}, 1e-6);
  closed_check("cone.omega_im_closed", cone::HolomorphicVolumeField{P, Part::Im}, 1e-6);

  out.checks.push_back(run_check("cone.omega_volume_ratio", 1e-6, cfg, [&] {
    std::vector<double> ratio;
    for (const auto& X : pts) {
      const auto om = cone::holomorphic_volume(P, X);
      const auto top = wedge(om, map_form<std::complex<double>>(om, [](auto c) { return std::conj(c); }));
      const double vol = std::sqrt(determinant<double, 6>(gc(X)));
      ratio.push_back(std::abs(top[0]) / vol);
    }
    return rel_std(ratio);
  }));

  // Lifts of ℜΨ, ℑΨ against Ω, after the one-point complex fit.
  const ConePoint ref = cone::reference_point(P);
  const auto fit = cone::fit_extraction_constant(P, ref);
  out.constants["extraction_k.re"] = fit.k.real();
  out.constants["extraction_k.im"] = fit.k.imag();
  out.checks.push_back(run_check("cone.extraction_matches_printed", 1e-7, cfg, [&] {
    return parallel_max(pts.size(), [&](std::size_t i) { return cone::extraction_residual(P, fit, pts[i]); });
  }));
  out.checks.push_back(run_check("cone.lifts_match_omega", 1e-7, cfg, [&] {
    return parallel_max(pts.size(), [&](std::size_t i) {
      const auto lre = cone::lift_form(KillingTwoFormField{P, Part::Re}, pts[i]);
      const auto lim = cone::lift_form(KillingTwoFormField{P, Part::Im}, pts[i]);
      AntisymForm lifted = complexify(lre, lim);
      lifted.scale(fit.k);
      return max_abs_diff(cone::holomorphic_volume(P, pts[i]), lifted);
    });
  }));
  out.checks.push_back(run_check("cone.extraction_r_independent", 1e-9, cfg, [&] {
    double r = 0.0;
    for (const auto& X : pts) {
      const BasePoint x = base_of(X);
      r = std::max(r, max_abs_diff(cone::extract_base_killing(P, cone_point(0.7, x)),
                                   cone::extract_base_killing(P, cone_point(1.9, x))));
    }
    return r;
  }));
}

void toric_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 40);
  const auto pts = sample_cone_points(P, rng, capped(cfg, 100));
  const auto model = toric::ypq_toric_model(P);
  std::vector<toric::MomentPoint> ys;
  for (const auto& X : pts) ys.push_back(toric::momentum_map(P, X[kR], base_of(X)));

  std::vector<toric::LegendreResult> leg(ys.size());
  std::string leg_error;
  try {
    parallel_for(ys.size(), [&](std::size_t i) { leg[i] = toric::legendre_roundtrip(model, ys[i]); });
  } catch (const std::exception& e) {
    leg_error = e.what();
  }
  auto leg_check = [&](const std::string& name, double tol, auto member) {
    out.checks.push_back(run_check(name, tol, cfg, [&] {
      if (!leg_error.empty()) throw NewtonDivergence(leg_error);
      double m = 0.0;
      for (const auto& l : leg) m = std::max(m, member(l));
      return m;
    }));
  };
  leg_check("toric.hessian_duality", 1e-8, [](const toric::LegendreResult& l) { return l.identity_residual; });
  leg_check("toric.legendre_roundtrip", 1e-9, [](const toric::LegendreResult& l) { return l.roundtrip; });
  leg_check("toric.legendre_involution", 1e-9, [](const toric::LegendreResult& l) { return l.involution; });
  leg_check("toric.det_product", 1e-8, [](const toric::LegendreResult& l) { return std::abs(l.det_product - 1.0); });

  out.checks.push_back(run_check("toric.det_constant", 1e-6, cfg, [&] {
    const auto fit = toric::fit_det_constant(model, ys);
    out.constants["det_constant_c"] = fit.c;
    return fit.rel_std;
  }));
  out.checks.push_back(run_check("toric.hessian_analytic", 1e-10, cfg, [&] {
    double m = 0.0;
    for (const auto& y : ys) {
      const auto G = toric::symplectic_potential(model, y);
      const auto H = toric::potential_hessian_analytic(model, y);
      double scale = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(H[i][j]));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(G.dd(i, j) - H[i][j]) / scale);
    }
    return m;
  }));
  out.checks.push_back(run_check("toric.reeb_pairing", 1e-10, cfg, [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i)
      m = std::max(m, std::abs(toric::pairing(model.reeb, ys[i]) - 0.5 * pts[i][kR] * pts[i][kR]));
    return m;
  }));
  out.checks.push_back(run_check("toric.closed_form_x", 1e-8, cfg, [&] {
    std::array<std::vector<double>, 3> diff;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const auto G = toric::symplectic_potential(model, ys[i]);
      const auto z = toric::complex_coordinates(P, pts[i][kR], base_of(pts[i]));
      for (int k = 0; k < 3; ++k) diff[k].push_back(z[k].real() - G.d(k));
    }
    return std::max({std_dev(diff[0]), std_dev(diff[1]), std_dev(diff[2])});
  }));
}

void wedge_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 50);
  const auto pts = sample_base_points(P, rng, capped(cfg, 50));
  std::vector<cone::WedgeExpansionReport> reps;
  for (const auto& x : pts) reps.push_back(cone::wedge_expansion_check(P, x));
  auto add = [&](const std::string& name, double tol, auto member) {
    out.checks.push_back(run_check(name, tol, cfg, [&] {
      double m = 0.0;
      for (const auto& r : reps) m = std::max(m, member(r));
      return m;
    }));
  };
  using R = cone::WedgeExpansionReport;
  add("wedge.t_forms_from_z", 1e-9, [](const R& r) { return r.t_forms; });
  add("wedge.t2_t3", 1e-9, [](const R& r) { return r.t2t3; });
  add("wedge.t1_t3", 1e-9, [](const R& r) { return r.t1t3; });
  add("wedge.t1_t2", 1e-9, [](const R& r) { return r.t1t2; });
  add("wedge.assembled_psi", 1e-9, [](const R& r) { return r.assembled; });
  add("wedge.a_forms", 1e-10, [](const R& r) { return r.a_forms; });
  add("wedge.sqrt_identity", 1e-10, [](const R& r) { return r.sqrt_identity; });
  add("wedge.collected_vs_printed", 1e-9, [](const R& r) { return r.printed_forms; });
}

void invariant_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 60);
  const auto states = dyn::random_states(P, rng, capped(cfg, 100));
  std::vector<dyn::InvariantConsistency> cons(states.size());
  std::string error;
  try {
    parallel_for(states.size(), [&](std::size_t i) { cons[i] = dyn::invariant_consistency(P, states[i]); });
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto add = [&](const std::string& name, double tol, auto fn) {
    out.checks.push_back(run_check(name, tol, cfg, [&] {
      if (!error.empty()) throw Error(error);
      double m = 0.0;
      for (const auto& c : cons) m = std::max(m, fn(c));
      return m;
    }));
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
  add("tensors.k1_printed_vs_re_psi", 1e-8, [&](const dyn::InvariantConsistency& c) { return rel(c.k1_printed, c.k1_re); });
  add("tensors.k1_re_vs_im", 1e-9, [&](const dyn::InvariantConsistency& c) { return rel(c.k1_re, c.k1_im); });
  add("tensors.mixed_vanishes", 1e-9, [](const dyn::InvariantConsistency& c) { return c.mixed_max; });
  add("tensors.k4_printed_vs_psi1", 1e-8, [&](const dyn::InvariantConsistency& c) { return rel(c.k4_printed, c.k4_psi1); });
  out.checks.push_back(run_check("tensors.stackel_killing", 1e-7, cfg, [&] {
    Rng prng = suite_rng(cfg, 61);
    const auto pts = sample_base_points(P, prng, capped(cfg, 20));
    return parallel_max(pts.size(), [&](std::size_t i) {
      const auto xs = seed<5>(pts[i]);
      const auto m = geom::evaluate_metric<5>(YpqMetric{P}, pts[i]);
      const auto g_inv = YpqMetric{P}.inverse(xs);
      const auto re = KillingTwoFormField{P, Part::Re}(xs);
      const auto psi1 = Psi1Field{P}(xs);
      const double r1 = geom::stackel_killing_residual<5>(m, geom::ky_to_sk<5, Jet<5>>(re, re, g_inv));
      const double r4 = geom::stackel_killing_residual<5>(m, geom::ky_to_sk<5, Jet<5>>(psi1, psi1, g_inv));
      return std::max(r1, r4);
    });
  }));
  out.constants["k1_constant"] = dyn::k1_constant(P);
  out.constants["k4_constant"] = dyn::kK4Constant;
}

void conservation_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 70);
  const auto states = dyn::random_states(P, rng, static_cast<std::size_t>(std::max(cfg.trajectories, 1)));
  dyn::IntegrationOptions opt;
  opt.t_end = cfg.t_end;
  opt.rtol = cfg.rtol;
  opt.atol = cfg.atol;
  std::vector<dyn::Trajectory> trs(states.size());
  std::string error;
  try {
    parallel_for(states.size(), [&](std::size_t i) { trs[i] = dyn::integrate_geodesic(P, states[i], opt); });
  } catch (const std::exception& e) {
    error = e.what();
  }
  for (int k = 0; k < dyn::kNumInvariants; ++k) {
    out.checks.push_back(run_check(std::string("conservation.") + dyn::kInvariantNames[k], 1e-7, cfg, [&] {
      if (!error.empty()) throw StepFailure(error);
      double m = 0.0;
      for (const auto& t : trs) m = std::max(m, t.max_drift[k]);
      return m;
    }));
  }
  double exits = 0.0;
  for (const auto& t : trs) exits += t.exit ? 1.0 : 0.0;
  out.constants["chart_exits"] = exits;

  Rng brng = suite_rng(cfg, 71);
  const auto bstates = dyn::random_states(P, brng, capped(cfg, 50));
  auto bracket_check = [&](const std::string& name, const std::vector<std::pair<int, int>>& pairs) {
    out.checks.push_back(run_check(name, 1e-8, cfg, [&] {
      return parallel_max(bstates.size(), [&](std::size_t i) {
        const auto B = dyn::bracket_matrix(P, bstates[i]);
        double m = 0.0;
        for (const auto& [a, b] : pairs) m = std::max(m, std::abs(B[a][b]));
        return m;
      });
    }));
  };
  using namespace dyn;
  bracket_check("brackets.with_hamiltonian", {{kK1, kH}, {kK4, kH}, {kJ2, kH}, {kPphi, kH}, {kPpsi, kH}, {kPalpha, kH}});
  std::vector<std::pair<int, int>> inv;
  const int involutive[] = {kPphi, kPpsi, kPalpha, kJ2, kK1, kK4};
  for (int a : involutive)
    for (int b : involutive)
      if (a < b) inv.emplace_back(a, b);
  bracket_check("brackets.involution", inv);
}

void rank_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out) {
  Rng rng = suite_rng(cfg, 80);
  const auto states = dyn::random_states(P, rng, static_cast<std::size_t>(std::max(cfg.rank_states, 1)));
  const std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
  const std::vector<int> five{0, 1, 2, 3, 4};
  auto add = [&](const std::string& name, const std::vector<int>& which, int expected) {
    out.checks.push_back(run_check(name, 0.5, SuiteConfig{}, [&] {
      double m = 0.0;
      for (const auto& s : states) {
        const auto r = dyn::jacobian_rank(P, s, which);
        if (r.degenerate) continue;
        m = std::max(m, std::abs(static_cast<double>(r.rank - expected)));
      }
      return m;
    }));
  };
  add("rank.all_seven", all, 5);
  add("rank.first_five", five, 5);
  add("rank.h_pphi", {0, 1}, 2);
}

SuiteResult run_verify(const SuiteConfig& cfg) {
  const PQParams P = make_params(cfg.p, cfg.q);
  if (cfg.samples < 1) throw ConfigError("samples must be positive");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  SuiteResult out;
  params_suite(P, cfg, out);
  einstein_suite(P, cfg, out);
  killing_suite(P, cfg, out);
  cone_suite(P, cfg, out);
  toric_suite(P, cfg, out);
  wedge_suite(P, cfg, out);
  invariant_suite(P, cfg, out);
  conservation_suite(P, cfg, out);
  rank_suite(P, cfg, out);
  return out;
}

}  // namespace ypq::suites
