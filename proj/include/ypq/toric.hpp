#pragma once

// Toric description of the cone over Y^{p,q}: inward normals, Reeb vector,
// symplectic potential in moment coordinates, Legendre duality and the
// holomorphic coordinates z^i.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "ypq/cplx.hpp"
#include "ypq/jet.hpp"
#include "ypq/linalg.hpp"
#include "ypq/params.hpp"

namespace ypq::toric {

using V3 = std::array<double, 3>;
using MomentPoint = V3;

enum class PotentialMode { CanonicalPlusReeb, SixVectorExact };

std::string mode_name(PotentialMode m);

struct ToricModel {
  std::vector<V3> normals;  // v1..v4, then v5, v6 in SixVectorExact mode
  V3 reeb{};
  PotentialMode mode = PotentialMode::SixVectorExact;
  // Expected sign of <v_A, y> on the chart image (+1 or -1).
  std::vector<int> signs;
};

ToricModel ypq_toric_model(const PQParams& P, PotentialMode mode = PotentialMode::SixVectorExact);

inline double pairing(const V3& v, const V3& y) { return v[0] * y[0] + v[1] * y[1] + v[2] * y[2]; }

// y1 = r²/6 (1−y)(1−cosθ), y2 = −r²/6 (1−y)cosθ + r²/2 lℓy, y3 = −ℓr²y
template <class T>
std::array<T, 3> momentum_map_t(const PQParams& P, const T& r, const T& theta, const T& y) {
  using std::cos;
  const T r2 = r * r;
  const T c = cos(theta);
  return {r2 / 6.0 * (1.0 - y) * (1.0 - c), -r2 / 6.0 * (1.0 - y) * c + r2 / 2.0 * (P.l * P.ell) * y, -P.ell * r2 * y};
}

MomentPoint momentum_map(const PQParams& P, double r, const BasePoint& x);

// Throws DomainError when some <v_A, y> is zero or has the wrong sign.
void check_domain(const ToricModel& m, const MomentPoint& y);

// G(y) with gradient x = ∇G and Hessian G_ij. Six-vector mode uses
// ½ Σ l_A log|l_A|; the v6 term enters with l6 < 0.
Jet<3> symplectic_potential(const ToricModel& m, const MomentPoint& y);

// ½ Σ_A v_A^i v_A^j / l_A(y), plus the l_B and l_∞ terms in canonical mode.
Mat<double, 3> potential_hessian_analytic(const ToricModel& m, const MomentPoint& y);

struct NewtonOptions {
  double tol = 1e-14;  // relative residual on x
  int max_iter = 100;
  double perturbation = 0.05;  // relative offset of the starting point
};

// y' with ∇G(y') = x, found by damped Newton from `start`.
MomentPoint inverse_gradient(const ToricModel& m, const V3& x, const MomentPoint& start, const NewtonOptions& opt = {});

struct LegendreResult {
  V3 x{};
  MomentPoint y_back{};
  double F = 0.0;            // <y, x> − G(y)
  double roundtrip = 0.0;    // |y_back − y|_∞
  Mat<double, 3> G_hess{};
  Mat<double, 3> F_hess{};   // ∂y/∂x from the inverse map
  double identity_residual = 0.0;  // |F·G − I|_∞
  double det_product = 0.0;        // det F · det G
  double involution = 0.0;         // |G(y) − (<x, y_back> − F)|
};

LegendreResult legendre_roundtrip(const ToricModel& m, const MomentPoint& y, const NewtonOptions& opt = {});

struct DetConstantFit {
  double c = 0.0;          // det(G_ij) exp(2x¹ + c) = 1
  double mean = 0.0;       // mean of det(G_ij) exp(2x¹)
  double rel_std = 0.0;
  std::vector<double> samples;
};

DetConstantFit fit_det_constant(const ToricModel& m, std::span<const MomentPoint> ys);

// z¹, z², z³ on the cone chart (r, θ, φ, y, α, ψ), with γ = α/ℓ:
//   Re z¹ = log(r³ sinθ √S),  Re z² = −log(r³ cos²(θ/2) √S),
//   Re z³ = e1 log r + e2 log(y3 − y) − l log cos(θ/2) − (p/2) log(y − y1),
//   Im z = (ψ, φ − ψ, (l/2)(φ − ψ) + γ),
// S = y³ − (3/2)y² + a/2, e1 = p(y1 − y3)/(1 − y1), e2 = p(1 − y3)/(2(1 − y1)).
template <class T>
std::array<Cx<T>, 3> complex_coordinates_t(const PQParams& P, const std::array<T, 6>& X) {
  using std::cos;
  using std::log;
  using std::sin;
  using std::sqrt;
  const T& r = X[0];
  const T& th = X[1];
  const T& ph = X[2];
  const T& y = X[3];
  const T& al = X[4];
  const T& ps = X[5];
  const T S = y * y * y - 1.5 * y * y + 0.5 * P.a;
  const T half = cos(th * 0.5);
  const T r3 = r * r * r;
  const double e1 = P.p * (P.y1 - P.y3) / (1.0 - P.y1);
  const double e2 = P.p * (1.0 - P.y3) / (2.0 * (1.0 - P.y1));
  const T x1 = log(r3 * sin(th) * sqrt(S));
  const T x2 = -log(r3 * half * half * sqrt(S));
  const T x3 = e1 * log(r) + e2 * log(P.y3 - y) - P.l * log(half) - 0.5 * P.p * log(y - P.y1);
  const T gam = al / P.ell;
  return {Cx<T>{x1, ps}, Cx<T>{x2, ph - ps}, Cx<T>{x3, 0.5 * P.l * (ph - ps) + gam}};
}

std::array<std::complex<double>, 3> complex_coordinates(const PQParams& P, double r, const BasePoint& x);

}  // namespace ypq::toric
