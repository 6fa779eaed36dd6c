#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "ypq/errors.hpp"
#include "ypq/toric.hpp"

using namespace ypq;
using namespace ypq::toric;
using test::Gen;

namespace {

// ∂_i G = ½ Σ_A v_A^i (log|l_A| + 1), written out directly.
V3 gradient_oracle(const ToricModel& m, const MomentPoint& y) {
  V3 g{};
  for (const auto& v : m.normals) {
    const double l = pairing(v, y);
    for (int i = 0; i < 3; ++i) g[i] += 0.5 * v[i] * (std::log(std::abs(l)) + 1.0);
  }
  return g;
}

MomentPoint sample_moment(const PQParams& P, Gen& g, double margin = kInteriorMargin) {
  const ConePoint X = g.cone_point(P, margin);
  return momentum_map(P, X[kR], base_of(X));
}

double min_facet(const ToricModel& m, const MomentPoint& y) {
  double lo = INFINITY;
  for (std::size_t a = 0; a < 4; ++a) lo = std::min(lo, std::abs(pairing(m.normals[a], y)));
  return lo;
}

}  // namespace

TEST_CASE("Y^{2,1} toric data") {
  const PQParams P = make_params(2, 1);
  const ToricModel m = ypq_toric_model(P);
  REQUIRE(m.normals.size() == 6);
  CHECK(m.normals[0] == V3{1.0, -1.0, -2.0});
  CHECK(m.normals[1] == V3{1.0, 0.0, 0.0});
  CHECK(m.normals[2] == V3{1.0, -1.0, 0.0});
  CHECK(m.normals[3] == V3{1.0, -2.0, -1.0});
  CHECK(m.reeb[0] == 3.0);
  CHECK(m.reeb[1] == -3.0);
  CHECK(m.reeb[2] == doctest::Approx(1.0 - std::sqrt(13.0)).epsilon(1e-13));
  // v5 = B − v1 − v3, v6 = −v2 − v4
  CHECK(m.normals[4][2] == doctest::Approx(3.0 - std::sqrt(13.0)).epsilon(1e-13));
  CHECK(m.normals[5] == V3{-2.0, 2.0, 1.0});
  CHECK(m.signs == std::vector<int>{1, 1, 1, 1, 1, -1});
  CHECK(ypq_toric_model(P, PotentialMode::CanonicalPlusReeb).normals.size() == 4);
}

TEST_CASE("reeb vector from the normals") {
  // B = v1 + v3 + v5 and Σ v1..v4 + v6 leaves v1 + v3.
  for (const auto& [p, q] : test::kFamilies) {
    const PQParams P = make_params(p, q);
    const ToricModel m = ypq_toric_model(P);
    for (int i = 0; i < 3; ++i) {
      CHECK(m.normals[0][i] + m.normals[2][i] + m.normals[4][i] == doctest::Approx(m.reeb[i]));
      CHECK(m.normals[1][i] + m.normals[3][i] + m.normals[5][i] == 0.0);
    }
  }
}

TEST_CASE("momentum map pairs with the reeb vector to r^2/2") {
  test::for_all(200, 61, [](Gen& g, int) {
    const PQParams P = g.family();
    const ToricModel m = ypq_toric_model(P);
    const ConePoint X = g.cone_point(P);
    const MomentPoint y = momentum_map(P, X[kR], base_of(X));
    CHECK(std::abs(pairing(m.reeb, y) - 0.5 * X[kR] * X[kR]) < 1e-12);
    CHECK_NOTHROW(check_domain(m, y));
    CHECK_NOTHROW(check_domain(ypq_toric_model(P, PotentialMode::CanonicalPlusReeb), y));
  });
}

TEST_CASE("image approaches a facet at the chart boundary") {
  for (const auto& [p, q] : test::kFamilies) {
    const PQParams P = make_params(p, q);
    const ToricModel m = ypq_toric_model(P);
    const double mid = 0.5 * (P.y1 + P.y2);
    const double eps = 1e-9;
    CHECK(min_facet(m, momentum_map(P, 1.0, BasePoint{eps, 0, mid, 0, 0})) < 1e-8);
    CHECK(min_facet(m, momentum_map(P, 1.0, BasePoint{std::numbers::pi - eps, 0, mid, 0, 0})) < 1e-8);
    CHECK(min_facet(m, momentum_map(P, 1.0, BasePoint{1.0, 0, P.y1 + eps, 0, 0})) < 1e-8);
    CHECK(min_facet(m, momentum_map(P, 1.0, BasePoint{1.0, 0, P.y2 - eps, 0, 0})) < 1e-8);
    CHECK(min_facet(m, momentum_map(P, 1.0, BasePoint{1.0, 0, mid, 0, 0})) > 1e-3);
  }
}

TEST_CASE("points off the polyhedral cone are rejected") {
  const PQParams P = make_params(3, 1);
  const ToricModel m = ypq_toric_model(P);
  CHECK_THROWS_AS(symplectic_potential(m, MomentPoint{-1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(symplectic_potential(m, MomentPoint{0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(legendre_roundtrip(m, MomentPoint{-1.0, 0.5, 0.2}), DomainError);
}

TEST_CASE("potential gradient and hessian against direct formulas") {
  test::for_all(100, 62, [](Gen& g, int) {
    const PQParams P = g.family();
    const ToricModel m = ypq_toric_model(P);
    const MomentPoint y = sample_moment(P, g);
    const auto G = symplectic_potential(m, y);
    const V3 grad = gradient_oracle(m, y);
    for (int i = 0; i < 3; ++i) CHECK(test::rel_err(G.d(i), grad[i]) < 1e-12);
    for (const auto mode : {PotentialMode::SixVectorExact, PotentialMode::CanonicalPlusReeb}) {
      const ToricModel mm = ypq_toric_model(P, mode);
      const auto Gm = symplectic_potential(mm, y);
      const auto H = potential_hessian_analytic(mm, y);
      double scale = 0.0;
      for (const auto& row : H)
        for (double v : row) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(Gm.dd(i, j) - H[i][j]) / scale < 1e-12);
    }
  });
}

TEST_CASE("potential hessian is positive definite on the image") {
  test::for_all(200, 63, [](Gen& g, int) {
    const PQParams P = g.family();
    const MomentPoint y = sample_moment(P, g, 1e-3);
    const auto H = potential_hessian_analytic(ypq_toric_model(P), y);
    CHECK(H[0][0] > 0.0);
    CHECK(H[0][0] * H[1][1] - H[0][1] * H[1][0] > 0.0);
    CHECK(determinant<double, 3>(H) > 0.0);
  });
}

TEST_CASE("legendre transform round trip and duality") {
  test::for_all(60, 64, [](Gen& g, int) {
    const PQParams P = g.family();
    const ToricModel m = ypq_toric_model(P);
    const MomentPoint y = sample_moment(P, g);
    const LegendreResult L = legendre_roundtrip(m, y);
    CHECK(L.roundtrip < 1e-11);
    CHECK(L.involution < 1e-11);
    CHECK(L.identity_residual < 1e-9);
    CHECK(std::abs(L.det_product - 1.0) < 1e-9);
    const V3 grad = gradient_oracle(m, y);
    for (int i = 0; i < 3; ++i) CHECK(test::rel_err(L.x[i], grad[i]) < 1e-12);
    // F = <y, x> − G
    CHECK(std::abs(L.F - (pairing(y, L.x) - symplectic_potential(m, y).value())) < 1e-12);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(L.F_hess[i][j] - L.F_hess[j][i]) < 1e-9 * std::abs(L.F_hess[i][i]) + 1e-12);
  });
}

TEST_CASE("legendre transform next to the facets") {
  // θ or y at the chart margin puts some l_A near 1e-7 r².
  for (const auto& [p, q] : test::kFamilies) {
    CAPTURE(p);
    const PQParams P = make_params(p, q);
    const ToricModel m = ypq_toric_model(P);
    const double mid = 0.5 * (P.y1 + P.y2);
    for (const BasePoint& x : {BasePoint{kInteriorMargin, 0, mid, 0, 0}, BasePoint{std::numbers::pi - kInteriorMargin, 0, mid, 0, 0},
                               BasePoint{1.0, 0, P.y1 + kInteriorMargin, 0, 0}, BasePoint{1.0, 0, P.y2 - kInteriorMargin, 0, 0}}) {
      const LegendreResult L = legendre_roundtrip(m, momentum_map(P, 1.3, x));
      CHECK(L.roundtrip < 1e-12);
      CHECK(L.identity_residual < 1e-8);
      CHECK(std::abs(L.det_product - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("inverse gradient reports divergence") {
  const PQParams P = make_params(2, 1);
  const ToricModel m = ypq_toric_model(P);
  const MomentPoint y = momentum_map(P, 1.0, BasePoint{1.0, 0, 0.0, 0, 0});
  CHECK_THROWS_AS(inverse_gradient(m, V3{0.0, 0.0, 0.0}, MomentPoint{-1.0, 0.0, 0.0}), NewtonDivergence);
  NewtonOptions one;
  one.max_iter = 1;
  const auto G = symplectic_potential(m, y);
  MomentPoint far = y;
  far[0] *= 1.5;
  CHECK_THROWS_AS(inverse_gradient(m, V3{G.d(0), G.d(1), G.d(2)}, far, one), NewtonDivergence);
}

TEST_CASE("inverse gradient recovers y from a perturbed start") {
  test::for_all(40, 65, [](Gen& g, int) {
    const PQParams P = g.family();
    const ToricModel m = ypq_toric_model(P);
    const MomentPoint y = sample_moment(P, g);
    const auto G = symplectic_potential(m, y);
    const V3 x{G.d(0), G.d(1), G.d(2)};
    const MomentPoint back = inverse_gradient(m, x, y);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - y[i]) < 1e-10 * (1.0 + std::abs(y[i])));
  });
}

TEST_CASE("det constant") {
  for (const auto& [p, q] : test::kFamilies) {
    CAPTURE(p);
    const PQParams P = make_params(p, q);
    const ToricModel m = ypq_toric_model(P);
    Gen g(66);
    std::vector<MomentPoint> ys;
    for (int i = 0; i < 60; ++i) ys.push_back(sample_moment(P, g));
    const DetConstantFit fit = fit_det_constant(m, ys);
    CHECK(fit.rel_std < 1e-9);
    // Independent evaluation at one point: c = −log det G − 2 x¹.
    const MomentPoint y0 = ys.front();
    const double c0 = -std::log(determinant<double, 3>(potential_hessian_analytic(m, y0))) - 2.0 * gradient_oracle(m, y0)[0];
    CHECK(fit.c == doctest::Approx(c0).epsilon(1e-9));
    if (p == 2 && q == 1) CHECK(fit.c == doctest::Approx(-2.0697338770286).epsilon(1e-11));
  }
}

TEST_CASE("holomorphic coordinates") {
  test::for_all(100, 67, [](Gen& g, int) {
    const PQParams P = g.family();
    const ConePoint X = g.cone_point(P);
    const BasePoint x = base_of(X);
    const auto z = complex_coordinates(P, X[kR], x);
    const double y = x[kY];
    const double S = y * y * y - 1.5 * y * y + 0.5 * P.a;
    const double r3 = X[kR] * X[kR] * X[kR];
    const auto e1 = std::exp(z[0]);
    const auto want = r3 * std::sin(x[kTheta]) * std::sqrt(S) * std::polar(1.0, x[kPsi]);
    CHECK(std::abs(e1 - want) < 1e-12 * std::abs(want));
    // Re z¹ + Re z² = log(sinθ / cos²(θ/2)), free of r and y.
    const double half = std::cos(0.5 * x[kTheta]);
    CHECK(std::abs(z[0].real() + z[1].real() - std::log(std::sin(x[kTheta]) / (half * half))) < 1e-12);
    const auto z2 = complex_coordinates(P, 2.0 * X[kR], x);
    CHECK(std::abs((z2[0].real() - z[0].real()) - 3.0 * std::log(2.0)) < 1e-12);
    CHECK(std::abs(z2[1].real() - z[1].real() + 3.0 * std::log(2.0)) < 1e-12);
    CHECK(std::abs(z2[0].imag() - z[0].imag()) == 0.0);
    CHECK(z[1].imag() == doctest::Approx(x[kPhi] - x[kPsi]));
    CHECK(z[2].imag() == doctest::Approx(0.5 * P.l * (x[kPhi] - x[kPsi]) + x[kAlpha] / P.ell));
  });
}

TEST_CASE("closed-form coordinates differ from the potential gradient by constants") {
  for (const auto& [p, q] : test::kFamilies) {
    CAPTURE(p);
    const PQParams P = make_params(p, q);
    const ToricModel m = ypq_toric_model(P);
    Gen g(68);
    std::array<double, 3> first{};
    for (int n = 0; n < 50; ++n) {
      const ConePoint X = g.cone_point(P);
      const auto z = complex_coordinates(P, X[kR], base_of(X));
      const V3 grad = gradient_oracle(m, momentum_map(P, X[kR], base_of(X)));
      for (int i = 0; i < 3; ++i) {
        const double d = z[i].real() - grad[i];
        if (n == 0)
          first[i] = d;
        else
          CHECK(std::abs(d - first[i]) < 1e-10);
      }
    }
  }
}

TEST_CASE("gradient map is monotone, hence injective") {
  // <∇G(y) − ∇G(y'), y − y'> > 0 for distinct points of the image.
  test::for_all(200, 69, [](Gen& g, int) {
    const PQParams P = g.family();
    const ToricModel m = ypq_toric_model(P);
    const MomentPoint a = sample_moment(P, g), b = sample_moment(P, g);
    const V3 ga = gradient_oracle(m, a), gb = gradient_oracle(m, b);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (ga[i] - gb[i]) * (a[i] - b[i]);
    CHECK(s > 0.0);
  });
}
