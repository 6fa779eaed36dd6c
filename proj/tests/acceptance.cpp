// One PASS/FAIL line per acceptance criterion, with pinned tolerances and
// sample counts. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ypq/cone.hpp"
#include "ypq/dynamics.hpp"
#include "ypq/geometry.hpp"
#include "ypq/parallel.hpp"
#include "ypq/sampling.hpp"
#include "ypq/toric.hpp"
#include "ypq/ypq.hpp"

#ifndef YPQ_CLI_PATH
#error "YPQ_CLI_PATH must point at the ypq executable"
#endif

using namespace ypq;

namespace {

constexpr std::array<std::pair<int, int>, 5> kFamilies{{{2, 1}, {3, 1}, {3, 2}, {5, 4}, {7, 3}}};

struct Measure {
  std::string label;
  double worst = 0.0;
  double tol = 0.0;
  bool ok() const { return worst < tol; }  // NaN fails
};

struct Outcome {
  std::vector<Measure> measures;
  std::string note;
  void add(std::string label, double worst, double tol) { measures.push_back({std::move(label), worst, tol}); }
};

double parallel_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  std::vector<double> v(n, 0.0);
  parallel_for(n, [&](std::size_t i) { v[i] = fn(i); });
  double m = 0.0;
  for (double x : v) m = std::isnan(x) ? x : std::max(m, x);
  return m;
}

Rng rng_for(int criterion, int p, int q) { return Rng(static_cast<std::uint64_t>(1000 * criterion + 10 * p + q)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <int N>
double max_abs_mat(const Mat<double, N>& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (double v : row) r = std::max(r, std::abs(v));
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double spread(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(v.size()));
}

// 1
Outcome einstein() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(1, p, q);
    const auto pts = sample_base_points(P, rng, 100);
    worst = std::max(worst, parallel_max(pts.size(), [&](std::size_t i) {
                       const auto g = YpqMetric{P}(pts[i]);
                       const auto ric = ricci_at(P, pts[i]);
                       double r = 0.0;
                       for (int a = 0; a < 5; ++a)
                         for (int b = 0; b < 5; ++b) r = std::max(r, std::abs(ric[a][b] - 4.0 * g[a][b]));
                       return r;
                     }));
  }
  o.add("|Ric-4g|", worst, 1e-7);
  o.add("runtime_s", seconds_since(t0), 30.0);
  return o;
}

// 2
Outcome ricci_flat_cone() {
  Outcome o;
  double worst = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(2, p, q);
    const auto pts = sample_cone_points(P, rng, 50);
    worst = std::max(worst, parallel_max(pts.size(), [&](std::size_t i) {
                       return max_abs_mat<6>(cone::cone_ricci_at(P, pts[i]));
                     }));
  }
  o.add("|Ric(cone)|", worst, 1e-6);
  return o;
}

// 3
Outcome killing_yano() {
  Outcome o;
  double ky = 0.0, sk = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(3, p, q);
    const auto pts = sample_base_points(P, rng, 50);
    const YpqMetric g{P};
    auto one = [&](const auto& field) {
      ky = std::max(ky, parallel_max(pts.size(), [&](std::size_t i) { return geom::killing_yano_residual<5>(g, field, pts[i]); }));
      const auto fit = geom::special_killing_fit<5>(g, field, std::span<const geom::Point<5>>(pts));
      sk = std::max(sk, fit.c_rel_std);
    };
    one(EtaField{P});
    one(Psi1Field{P});
    one(KillingTwoFormField{P, Part::Re});
    one(KillingTwoFormField{P, Part::Im});
  }
  o.add("KY residual", ky, 1e-7);
  o.add("special-Killing std/|c|", sk, 1e-6);
  return o;
}

// 4
Outcome cone_parallel() {
  Outcome o;
  double lift = 0.0, om_par = 0.0, om_closed = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(4, p, q);
    const auto pts = sample_cone_points(P, rng, 50);
    const cone::ConeMetric gc{P};
    auto nabla = [&](const auto& field) {
      return parallel_max(pts.size(), [&](std::size_t i) {
        const auto m = geom::evaluate_metric<6>(gc, pts[i]);
        return geom::covariant_derivative_form<6>(m, geom::evaluate_form<6>(field, pts[i])).max_abs();
      });
    };
    auto d = [&](const auto& field) {
      return parallel_max(pts.size(), [&](std::size_t i) {
        return max_abs(geom::exterior_derivative<6>(geom::evaluate_form<6>(field, pts[i])));
      });
    };
    lift = std::max({lift, nabla(cone::lifted(KillingTwoFormField{P, Part::Re})),
                     nabla(cone::lifted(KillingTwoFormField{P, Part::Im}))});
    const cone::HolomorphicVolumeField re{P, Part::Re}, im{P, Part::Im};
    om_par = std::max({om_par, nabla(re), nabla(im)});
    om_closed = std::max({om_closed, d(re), d(im)});
  }
  o.add("|nabla lift|", lift, 1e-6);
  o.add("|nabla Omega|", om_par, 1e-6);
  o.add("|d Omega|", om_closed, 1e-6);
  return o;
}

// 5
Outcome extraction() {
  Outcome o;
  double ext = 0.0, wedge = 0.0;
  std::ostringstream ks;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    const auto fit = cone::fit_extraction_constant(P, cone::reference_point(P));
    if (p == 2 && q == 1) ks << "k(2,1)=" << fit.k.real() << (fit.k.imag() < 0 ? "" : "+") << fit.k.imag() << "i";
    Rng rng = rng_for(5, p, q);
    const auto held_out = sample_cone_points(P, rng, 50);
    ext = std::max(ext, parallel_max(held_out.size(), [&](std::size_t i) { return cone::extraction_residual(P, fit, held_out[i]); }));
    const auto base = sample_base_points(P, rng, 50);
    wedge = std::max(wedge, parallel_max(base.size(), [&](std::size_t i) {
                       const auto r = cone::wedge_expansion_check(P, base[i]);
                       return std::max({r.t2t3, r.t1t3, r.t1t2});
                     }));
  }
  o.add("extraction residual", ext, 1e-7);
  o.add("T-wedge expansions", wedge, 1e-9);
  o.note = ks.str();
  return o;
}

// 6
Outcome toric_duality() {
  Outcome o;
  double ident = 0.0, round = 0.0, det = 0.0, xform = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(6, p, q);
    const auto pts = sample_cone_points(P, rng, 100);
    const auto model = toric::ypq_toric_model(P);
    std::vector<toric::MomentPoint> ys;
    for (const auto& X : pts) ys.push_back(toric::momentum_map(P, X[kR], base_of(X)));
    std::vector<toric::LegendreResult> leg(ys.size());
    parallel_for(ys.size(), [&](std::size_t i) { leg[i] = toric::legendre_roundtrip(model, ys[i]); });
    for (const auto& l : leg) {
      ident = std::max(ident, l.identity_residual);
      round = std::max(round, l.roundtrip);
    }
    det = std::max(det, toric::fit_det_constant(model, ys).rel_std);
    std::array<std::vector<double>, 3> diff;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const auto z = toric::complex_coordinates(P, pts[i][kR], base_of(pts[i]));
      for (int k = 0; k < 3; ++k) diff[k].push_back(z[k].real() - leg[i].x[k]);
    }
    xform = std::max({xform, spread(diff[0]), spread(diff[1]), spread(diff[2])});
  }
  o.add("|F.G - I|", ident, 1e-8);
  o.add("Legendre roundtrip", round, 1e-9);
  o.add("det std/mean", det, 1e-6);
  o.add("std(Re z - grad G)", xform, 1e-8);
  return o;
}

// 7
Outcome conservation() {
  Outcome o;
  double drift = 0.0, br = 0.0;
  int exits = 0, evaluated = 0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(7, p, q);
    const auto states = dyn::random_states(P, rng, 10);
    dyn::IntegrationOptions opt;
    opt.t_end = 50.0;
    opt.rtol = 1e-10;
    opt.atol = 1e-12;
    std::vector<dyn::Trajectory> trs(states.size());
    parallel_for(states.size(), [&](std::size_t i) { trs[i] = dyn::integrate_geodesic(P, states[i], opt); });
    for (const auto& t : trs) {
      exits += t.exit ? 1 : 0;
      for (double d : t.max_drift) drift = std::max(drift, d);
      for (const auto& s : t.samples) {
        const auto B = dyn::bracket_matrix(P, s.s);
        br = std::max({br, std::abs(B[dyn::kK1][dyn::kH]), std::abs(B[dyn::kK4][dyn::kH])});
        ++evaluated;
      }
    }
  }
  o.add("max relative drift", drift, 1e-7);
  o.add("|{K,H}|", br, 1e-8);
  o.note = std::to_string(exits) + "/50 trajectories left the chart early; " + std::to_string(evaluated) +
           " bracket states";
  return o;
}

// 8
Outcome tensor_structure() {
  Outcome o;
  double mixed = 0.0, im_k1 = 0.0, printed = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(8, p, q);
    const auto pts = sample_base_points(P, rng, 50);
    mixed = std::max(mixed, parallel_max(pts.size(), [&](std::size_t i) {
                       const auto g_inv = YpqMetric{P}.inverse(pts[i]);
                       const RealForm re = KillingTwoFormField{P, Part::Re}(pts[i]);
                       const RealForm im = KillingTwoFormField{P, Part::Im}(pts[i]);
                       return max_abs_mat<5>(geom::ky_to_sk<5, double>(re, im, g_inv));
                     }));
    const auto states = dyn::random_states(P, rng, 50);
    for (const auto& s : states) {
      const auto c = dyn::invariant_consistency(P, s);
      im_k1 = std::max(im_k1, rel(c.k1_im, c.k1_printed));
      printed = std::max({printed, rel(c.k1_printed, c.k1_re), rel(c.k4_printed, c.k4_psi1)});
    }
  }
  o.add("|K(RePsi,ImPsi)|", mixed, 1e-9);
  o.add("K(ImPsi,ImPsi) vs K1", im_k1, 1e-9);
  o.add("printed K1/K4 vs contractions", printed, 1e-8);
  return o;
}

// 9
Outcome integrability() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::array<int, 7> all{0, 1, 2, 3, 4, 5, 6};
  int off = 0, above = 0, generic = 0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    Rng rng = rng_for(9, p, q);
    const auto states = dyn::random_states(P, rng, 20);
    for (const auto& r : dyn::jacobian_rank(P, states, all)) {
      if (r.rank > 5) ++above;
      if (r.degenerate) continue;
      ++generic;
      if (r.rank != 5) ++off;
    }
  }
  o.add("states with rank != 5", off, 0.5);
  o.add("states with rank > 5", above, 0.5);
  o.add("runtime_s", seconds_since(t0), 10.0);
  o.note = std::to_string(generic) + "/100 generic states";
  return o;
}

// 10
Outcome parameters() {
  Outcome o;
  double cub = 0.0, vieta = 0.0, ap = 0.0, v5 = 0.0, eta = 0.0;
  for (const auto& [p, q] : kFamilies) {
    const PQParams P = make_params(p, q);
    cub = std::max({cub, std::abs(cubic(P, P.y1)), std::abs(cubic(P, P.y2)), std::abs(cubic(P, P.y3))});
    vieta = std::max(vieta, std::abs(P.y1 + P.y2 + P.y3 - 1.5));
    Rng rng = rng_for(10, p, q);
    const MetricFunctions fn{P};
    for (int i = 0; i < 100; ++i) {
      const double y = uniform(rng, P.y1 + kInteriorMargin, P.y2 - kInteriorMargin);
      ap = std::max(ap, std::abs(fn.a(y) * fn.p(y) + 1.0 / (2.0 * P.ell)));
    }
    // v5 = B − v1 − v3 against (1, −1, −p/2 + 3q/2 − 1/(2ℓ)).
    const auto model = toric::ypq_toric_model(P);
    const toric::V3 printed{1.0, -1.0, -0.5 * p + 1.5 * q - 1.0 / (2.0 * P.ell)};
    for (int k = 0; k < 3; ++k) v5 = std::max(v5, std::abs(model.normals[4][k] - printed[k]));
    const auto B = reeb_at(P);
    for (const auto& x : sample_base_points(P, rng, 100)) {
      const RealForm e = eta_at(P, x);
      double v = 0.0;
      for (int k = 0; k < 5; ++k) v += e[k] * B[k];
      eta = std::max(eta, std::abs(v - 1.0));
    }
  }
  o.add("cubic residual", cub, 1e-12);
  o.add("|y1+y2+y3-3/2|", vieta, 1e-12);
  o.add("|a p + 1/(2l)|", ap, 1e-10);
  o.add("v5 definitions", v5, 1e-14);
  o.add("|eta(B)-1|", eta, 1e-15);
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 11
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("ypq_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json", b = dir / "b.json";
  const std::string cli = YPQ_CLI_PATH;
  const std::string args = " verify --p 2 --q 1 --seed 42 --json ";
  const int ra = std::system((cli + args + a.string() + " > /dev/null").c_str());
  const int rb = std::system(("YPQ_THREADS=1 " + cli + args + b.string() + " > /dev/null").c_str());
  const std::string ja = slurp(a), jb = slurp(b);
  std::filesystem::remove_all(dir);
  o.add("exit status", (ra == 0 && rb == 0) ? 0.0 : 1.0, 0.5);
  o.add("byte mismatch", (!ja.empty() && ja == jb) ? 0.0 : 1.0, 0.5);
  o.note = std::to_string(ja.size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Einstein Ric = 4g", einstein},
      {"Ricci-flat cone", ricci_flat_cone},
      {"Killing-Yano and special-Killing", killing_yano},
      {"parallel cone lifts and Omega", cone_parallel},
      {"Omega extraction and wedge expansions", extraction},
      {"toric Legendre duality", toric_duality},
      {"conserved quantities along geodesics", conservation},
      {"symmetric tensor structure", tensor_structure},
      {"Jacobian rank 5", integrability},
      {"parameter identities", parameters},
      {"deterministic verify report", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    std::string error;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool pass = error.empty() && std::all_of(o.measures.begin(), o.measures.end(), [](const Measure& m) { return m.ok(); });
    failed += pass ? 0 : 1;
    std::printf("%s %2zu %s:", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& m : o.measures) std::printf(" %s=%.3g(<%.0e)", m.label.c_str(), m.worst, m.tol);
    if (!o.note.empty()) std::printf(" [%s]", o.note.c_str());
    if (!error.empty()) std::printf(" error: %s", error.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
