#include "ypq/toric.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>

#include "ypq/errors.hpp"

namespace ypq::toric {

std::string mode_name(PotentialMode m) {
  return m == PotentialMode::SixVectorExact ? "SixVectorExact" : "CanonicalPlusReeb";
}

ToricModel ypq_toric_model(const PQParams& P, PotentialMode mode) {
  ToricModel m;
  m.mode = mode;
  const double p = P.p, q = P.q;
  m.reeb = {3.0, -3.0, -1.5 * (P.l + 1.0 / (3.0 * P.ell))};
  m.normals = {{1.0, -1.0, -p}, {1.0, 0.0, 0.0}, {1.0, -1.0, 0.0}, {1.0, -2.0, -p + q}};
  m.signs = {1, 1, 1, 1};
  if (mode == PotentialMode::SixVectorExact) {
    const V3& v1 = m.normals[0];
    const V3& v2 = m.normals[1];
    const V3& v3 = m.normals[2];
    const V3& v4 = m.normals[3];
    V3 v5{}, v6{};
    for (int i = 0; i < 3; ++i) {
      v5[i] = m.reeb[i] - v1[i] - v3[i];
      v6[i] = -v2[i] - v4[i];
    }
    m.normals.push_back(v5);
    m.normals.push_back(v6);
    m.signs.push_back(1);
    m.signs.push_back(-1);
  }
  return m;
}

MomentPoint momentum_map(const PQParams& P, double r, const BasePoint& x) {
  return momentum_map_t<double>(P, r, x[kTheta], x[kY]);
}

namespace {

V3 sum_normals(const ToricModel& m) {
  V3 s{};
  for (std::size_t a = 0; a < 4; ++a)
    for (int i = 0; i < 3; ++i) s[i] += m.normals[a][i];
  return s;
}

template <class T>
T pairing_t(const V3& v, const std::array<T, 3>& y) {
  return v[0] * y[0] + v[1] * y[1] + v[2] * y[2];
}

// ½ l log|l|
template <class T>
T entropy_term(const T& l) {
  using std::abs;
  using std::log;
  return 0.5 * l * log(abs(l));
}

}  // namespace

void check_domain(const ToricModel& m, const MomentPoint& y) {
  for (std::size_t a = 0; a < m.normals.size(); ++a) {
    const double l = pairing(m.normals[a], y);
    if (!(l * m.signs[a] > 0.0))
      throw DomainError("<v" + std::to_string(a + 1) + ", y> = " + std::to_string(l) + " has the wrong sign");
  }
  if (m.mode == PotentialMode::CanonicalPlusReeb) {
    if (!(pairing(m.reeb, y) > 0.0)) throw DomainError("<B, y> must be positive");
    if (!(pairing(sum_normals(m), y) > 0.0)) throw DomainError("l_inf(y) must be positive");
  }
}

Jet<3> symplectic_potential(const ToricModel& m, const MomentPoint& y) {
  check_domain(m, y);
  const auto yj = seed<3>(y);
  Jet<3> G;
  for (const auto& v : m.normals) G += entropy_term(pairing_t(v, yj));
  if (m.mode == PotentialMode::CanonicalPlusReeb) {
    G += entropy_term(pairing_t(m.reeb, yj));
    G -= entropy_term(pairing_t(sum_normals(m), yj));
  }
  return G;
}

Mat<double, 3> potential_hessian_analytic(const ToricModel& m, const MomentPoint& y) {
  Mat<double, 3> H{};
  auto add = [&](const V3& v, double w) {
    const double l = pairing(v, y);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) H[i][j] += w * 0.5 * v[i] * v[j] / l;
  };
  for (const auto& v : m.normals) add(v, 1.0);
  if (m.mode == PotentialMode::CanonicalPlusReeb) {
    add(m.reeb, 1.0);
    add(sum_normals(m), -1.0);
  }
  return H;
}

namespace {

bool in_domain(const ToricModel& m, const MomentPoint& y) {
  try {
    check_domain(m, y);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

double inf_norm(const V3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

V3 gradient_residual(const ToricModel& m, const MomentPoint& y, const V3& x, Mat<double, 3>* hess) {
  const Jet<3> G = symplectic_potential(m, y);
  V3 r{};
  for (int i = 0; i < 3; ++i) {
    r[i] = G.d(i) - x[i];
    if (hess)
      for (int j = 0; j < 3; ++j) (*hess)[i][j] = G.dd(i, j);
  }
  return r;
}

std::string to_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Rounding floor of ∇G at y: each l_A carries an absolute error of about
// eps |v_A|_1 |y|_∞, which log|l_A| turns into a relative one.
double gradient_noise(const ToricModel& m, const MomentPoint& y) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto one = [&](const V3& v) {
    const double l1 = std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]);
    return 0.5 * inf_norm(v) * (1.0 + l1 * inf_norm(y) / std::abs(pairing(v, y)));
  };
  double n = 0.0;
  for (const auto& v : m.normals) n += one(v);
  if (m.mode == PotentialMode::CanonicalPlusReeb) n += one(m.reeb) + one(sum_normals(m));
  return 4.0 * eps * n;
}

}  // namespace

MomentPoint inverse_gradient(const ToricModel& m, const V3& x, const MomentPoint& start, const NewtonOptions& opt) {
  if (!in_domain(m, start)) throw NewtonDivergence("starting point outside the potential's domain");
  const double scale = std::max(1.0, inf_norm(x));
  MomentPoint y = start;
  Mat<double, 3> J{};
  V3 res = gradient_residual(m, y, x, &J);
  double err = inf_norm(res) / scale;
  for (int it = 0; it < opt.max_iter && err > opt.tol; ++it) {
    const auto Jinv = inverse<double, 3>(J);
    const V3 step = matvec<double, 3>(Jinv, res);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      MomentPoint trial{y[0] - t * step[0], y[1] - t * step[1], y[2] - t * step[2]};
      if (!in_domain(m, trial)) continue;
      Mat<double, 3> Jt{};
      const V3 rt = gradient_residual(m, trial, x, &Jt);
      const double et = inf_norm(rt) / scale;
      if (et < err || et <= opt.tol) {
        y = trial;
        J = Jt;
        res = rt;
        err = et;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(err <= std::max(opt.tol, gradient_noise(m, y) / scale)))
    throw NewtonDivergence("relative gradient residual " + to_sci(err) + " after Newton iterations");
  return y;
}

namespace {

using CV3 = std::array<std::complex<double>, 3>;

constexpr double kComplexStep = 1e-20;

std::complex<double> pairing_c(const V3& v, const CV3& y) { return v[0] * y[0] + v[1] * y[1] + v[2] * y[2]; }

// ∇G continued to complex y; log|l| becomes log(sign · l).
CV3 gradient_complex(const ToricModel& m, const CV3& y) {
  CV3 g{};
  auto add = [&](const V3& v, double sign, double w) {
    const auto lg = std::log(sign * pairing_c(v, y));
    for (int i = 0; i < 3; ++i) g[i] += w * 0.5 * v[i] * (lg + 1.0);
  };
  for (std::size_t a = 0; a < m.normals.size(); ++a) add(m.normals[a], m.signs[a], 1.0);
  if (m.mode == PotentialMode::CanonicalPlusReeb) {
    add(m.reeb, 1.0, 1.0);
    add(sum_normals(m), 1.0, -1.0);
  }
  return g;
}

Mat<std::complex<double>, 3> jacobian_complex(const ToricModel& m, const CV3& y) {
  Mat<std::complex<double>, 3> J{};
  auto add = [&](const V3& v, double w) {
    const auto l = pairing_c(v, y);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J[i][j] += w * 0.5 * v[i] * v[j] / l;
  };
  for (const auto& v : m.normals) add(v, 1.0);
  if (m.mode == PotentialMode::CanonicalPlusReeb) {
    add(m.reeb, 1.0);
    add(sum_normals(m), -1.0);
  }
  return J;
}

// Solves ∇G(y) = x for complex x with a tiny imaginary part. Newton runs to
// stagnation so the imaginary part of y is resolved to working precision.
CV3 inverse_gradient_complex(const ToricModel& m, const CV3& x, const MomentPoint& start, const NewtonOptions& opt) {
  const V3 xr{x[0].real(), x[1].real(), x[2].real()};
  const MomentPoint y0 = inverse_gradient(m, xr, start, opt);
  CV3 y{y0[0], y0[1], y0[2]};
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iter; ++it) {
    const CV3 g = gradient_complex(m, y);
    CV3 res{};
    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
      res[i] = g[i] - x[i];
      err = std::max(err, std::abs(res[i].imag()) / kComplexStep);
    }
    const auto step = matvec<std::complex<double>, 3>(inverse<std::complex<double>, 3>(jacobian_complex(m, y)), res);
    for (int i = 0; i < 3; ++i) y[i] -= step[i];
    if (err == 0.0 || err >= prev) break;
    prev = err;
  }
  return y;
}

}  // namespace

LegendreResult legendre_roundtrip(const ToricModel& m, const MomentPoint& y, const NewtonOptions& opt) {
  LegendreResult out;
  const Jet<3> G = symplectic_potential(m, y);
  for (int i = 0; i < 3; ++i) {
    out.x[i] = G.d(i);
    for (int j = 0; j < 3; ++j) out.G_hess[i][j] = G.dd(i, j);
  }
  out.F = pairing(y, out.x) - G.value();

  // Start away from y so the inversion is a genuine solve.
  const V3 dir{0.7, -0.4, 0.3};
  MomentPoint start = y;
  for (double delta = opt.perturbation; delta > 1e-8; delta *= 0.5) {
    for (int i = 0; i < 3; ++i) start[i] = y[i] * (1.0 + delta * dir[i]);
    if (in_domain(m, start)) break;
    start = y;
  }
  out.y_back = inverse_gradient(m, out.x, start, opt);
  out.roundtrip = inf_norm({out.y_back[0] - y[0], out.y_back[1] - y[1], out.y_back[2] - y[2]});
  out.involution = std::abs(G.value() - (pairing(out.x, out.y_back) - out.F));

  // F_ij = ∂y^i/∂x^j by complex-step differentiation of the Newton inverse.
  for (int j = 0; j < 3; ++j) {
    CV3 xc{out.x[0], out.x[1], out.x[2]};
    xc[j] += std::complex<double>(0.0, kComplexStep);
    const CV3 yc = inverse_gradient_complex(m, xc, start, opt);
    for (int i = 0; i < 3; ++i) out.F_hess[i][j] = yc[i].imag() / kComplexStep;
  }
  const auto prod = matmul<double, 3>(out.F_hess, out.G_hess);
  out.identity_residual = max_abs_diff<3>(prod, identity<double, 3>());
  out.det_product = determinant<double, 3>(out.F_hess) * determinant<double, 3>(out.G_hess);
  return out;
}

DetConstantFit fit_det_constant(const ToricModel& m, std::span<const MomentPoint> ys) {
  DetConstantFit fit;
  for (const auto& y : ys) {
    const Jet<3> G = symplectic_potential(m, y);
    Mat<double, 3> H{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) H[i][j] = G.dd(i, j);
    fit.samples.push_back(determinant<double, 3>(H) * std::exp(2.0 * G.d(0)));
  }
  if (fit.samples.empty()) return fit;
  const double n = static_cast<double>(fit.samples.size());
  fit.mean = std::accumulate(fit.samples.begin(), fit.samples.end(), 0.0) / n;
  double var = 0.0;
  for (double s : fit.samples) var += (s - fit.mean) * (s - fit.mean);
  fit.rel_std = std::sqrt(var / n) / std::abs(fit.mean);
  fit.c = -std::log(fit.mean);
  return fit;
}

std::array<std::complex<double>, 3> complex_coordinates(const PQParams& P, double r, const BasePoint& x) {
  const ConePoint X = cone_point(r, x);
  require_in_chart(P, X);
  const auto z = complex_coordinates_t<double>(P, X);
  return {to_std(z[0]), to_std(z[1]), to_std(z[2])};
}

}  // namespace ypq::toric
