#pragma once

// Closed-form geometric data on Y^{p,q} in the base chart (θ, φ, y, α, ψ):
// the Sasaki-Einstein metric, the contact form η, the Reeb vector, and the
// special Killing forms. Every field is a template over the scalar type so it
// can be evaluated on jets.

#include <array>
#include <cmath>

#include "ypq/form.hpp"
#include "ypq/geometry.hpp"
#include "ypq/linalg.hpp"
#include "ypq/params.hpp"

namespace ypq {

struct YpqMetric {
  static constexpr int dim = 5;
  PQParams P;

  template <class T>
  Mat<T, 5> operator()(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    const MetricFunctions fn{P};
    const T& th = x[kTheta];
    const T& y = x[kY];
    const T w = fn.w(y);
    const T qy = fn.q(y);
    const T f = fn.f(y);
    const T c = cos(th);
    const T s = sin(th);
    const T one_minus_y = 1.0 - y;
    // e = dψ − cosθ dφ ; A = dα + f e
    std::array<T, 5> e{};
    e[kPhi] = -c;
    e[kPsi] = T(1.0);
    std::array<T, 5> A{};
    A[kAlpha] = T(1.0);
    for (int i = 0; i < 5; ++i) A[i] += f * e[i];

    Mat<T, 5> g{};
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        g[i][j] = qy / 9.0 * e[i] * e[j] + w * A[i] * A[j];
        g[j][i] = g[i][j];
      }
    g[kTheta][kTheta] += one_minus_y / 6.0;
    g[kPhi][kPhi] += one_minus_y / 6.0 * s * s;
    g[kY][kY] += 1.0 / (w * qy);
    return g;
  }

  // Σ_a λ_a⁻¹ E_a ⊗ E_a over the frame dual to (dθ, sinθ dφ, dy, e, A):
  // E_φ = (∂_φ + cosθ ∂_ψ)/sinθ, E_e = ∂_ψ − f ∂_α.
  template <class T>
  Mat<T, 5> inverse(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    const MetricFunctions fn{P};
    const T& th = x[kTheta];
    const T& y = x[kY];
    const T w = fn.w(y);
    const T qy = fn.q(y);
    const T f = fn.f(y);
    const T c = cos(th);
    const T s = sin(th);
    const T sphere = 6.0 / (1.0 - y);
    const T fiber = 9.0 / qy;
    const T u = sphere / (s * s);
    Mat<T, 5> gi{};
    gi[kTheta][kTheta] = sphere;
    gi[kY][kY] = w * qy;
    gi[kPhi][kPhi] = u;
    gi[kPhi][kPsi] = gi[kPsi][kPhi] = u * c;
    gi[kPsi][kPsi] = u * c * c + fiber;
    gi[kPsi][kAlpha] = gi[kAlpha][kPsi] = -fiber * f;
    gi[kAlpha][kAlpha] = 1.0 / w + fiber * f * f;
    return gi;
  }

  // Orthonormal coframe √((1−y)/6) (dθ, sinθ dφ), dy/√(wq), (√q/3) e, √w A.
  template <class T>
  Mat<T, 5> coframe(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const MetricFunctions fn{P};
    const T& y = x[kY];
    const T w = fn.w(y);
    const T qy = fn.q(y);
    const T f = fn.f(y);
    const T c = cos(x[kTheta]);
    const T h = sqrt((1.0 - y) / 6.0);
    const T sq = sqrt(qy) / 3.0;
    const T sw = sqrt(w);
    Mat<T, 5> th{};
    th[0][kTheta] = h;
    th[1][kPhi] = h * sin(x[kTheta]);
    th[2][kY] = 1.0 / sqrt(w * qy);
    th[3][kPsi] = sq;
    th[3][kPhi] = -sq * c;
    th[4][kAlpha] = sw;
    th[4][kPsi] = sw * f;
    th[4][kPhi] = -sw * f * c;
    return th;
  }

  // Dual frame: rows E_a with θ^a(E_b) = δ^a_b.
  template <class T>
  Mat<T, 5> frame(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const MetricFunctions fn{P};
    const T& y = x[kY];
    const T w = fn.w(y);
    const T qy = fn.q(y);
    const T f = fn.f(y);
    const T hi = sqrt(6.0 / (1.0 - y));
    const T s = sin(x[kTheta]);
    const T e3 = 3.0 / sqrt(qy);
    Mat<T, 5> E{};
    E[0][kTheta] = hi;
    E[1][kPhi] = hi / s;
    E[1][kPsi] = hi * cos(x[kTheta]) / s;
    E[2][kY] = sqrt(w * qy);
    E[3][kPsi] = e3;
    E[3][kAlpha] = -e3 * f;
    E[4][kAlpha] = 1.0 / sqrt(w);
    return E;
  }
};

// Evaluates the metric with derivatives at an open-chart point.
geom::MetricEval<5> metric_at(const PQParams& P, const BasePoint& x);

// Ricci tensor through the orthonormal frame. Throws OutOfChart.
Mat<double, 5> ricci_at(const PQParams& P, const BasePoint& x);

// B = 3∂_ψ − ½∂_α
inline Vec<double, 5> reeb_at(const PQParams&) { return {0.0, 0.0, 0.0, -0.5, 3.0}; }

// η = −2y dα + (1−y)/3 (dψ − cosθ dφ)
struct EtaField {
  PQParams P;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    using std::cos;
    Form<T> f(1, 5);
    const T& y = x[kY];
    f[kPhi] = -(1.0 - y) / 3.0 * cos(x[kTheta]);
    f[kAlpha] = -2.0 * y;
    f[kPsi] = (1.0 - y) / 3.0;
    return f;
  }
};

// Φ₁ = dη, written out.
struct Phi1Field {
  PQParams P;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    Form<T> f(2, 5);
    const T& y = x[kY];
    f.add({kTheta, kPhi}, (1.0 - y) / 3.0 * sin(x[kTheta]));
    f.add({kY, kPhi}, cos(x[kTheta]) / 3.0);
    f.add({kY, kAlpha}, T(-2.0));
    f.add({kY, kPsi}, T(-1.0 / 3.0));
    return f;
  }
};

// Ψ₁ in the printed normalization, equal to 9 η ∧ dη:
// (1−y)² sinθ dθ∧dφ∧dψ − 6 dy∧dα∧dψ + 6 cosθ dφ∧dy∧dα − 6(1−y)y sinθ dθ∧dφ∧dα
struct Psi1Field {
  PQParams P;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    Form<T> f(3, 5);
    const T& y = x[kY];
    const T s = sin(x[kTheta]);
    f.add({kTheta, kPhi, kPsi}, (1.0 - y) * (1.0 - y) * s);
    f.add({kY, kAlpha, kPsi}, T(-6.0));
    f.add({kPhi, kY, kAlpha}, 6.0 * cos(x[kTheta]));
    f.add({kTheta, kPhi, kAlpha}, -6.0 * (1.0 - y) * y * s);
    return f;
  }
};

// Φ₂ = (dη)²
struct Phi2Field {
  PQParams P;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    const auto d = Phi1Field{P}(x);
    return wedge(d, d);
  }
};

// Ψ₂ = η ∧ (dη)²
struct Psi2Field {
  PQParams P;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    return wedge(EtaField{P}(x), Phi2Field{P}(x));
  }
};

// The real (Re) or imaginary (Im) part of the complex special Killing 2-form
//   Ψ = −3/(2ℓ) √((1−y)/(6p(y))) e^{iψ} (A + iB),
//   A = dθ∧dy − p sinθ dψ∧dφ + 6p sinθ dφ∧dα,
//   B = −p dθ∧dψ − 6p dθ∧dα − sinθ dy∧dφ + p cosθ dθ∧dφ.
enum class Part { Re, Im };

template <class T>
std::array<Form<T>, 2> killing_two_form_parts(const PQParams& P, const std::array<T, 5>& x) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const MetricFunctions fn{P};
  const T& th = x[kTheta];
  const T& y = x[kY];
  const T py = fn.p(y);
  const T s = sin(th);
  const T c = cos(th);
  const T pre = -3.0 / (2.0 * P.ell) * sqrt((1.0 - y) / (6.0 * py));
  Form<T> A(2, 5), B(2, 5);
  A.add({kTheta, kY}, pre);
  A.add({kPsi, kPhi}, -pre * py * s);
  A.add({kPhi, kAlpha}, 6.0 * pre * py * s);
  B.add({kTheta, kPsi}, -pre * py);
  B.add({kTheta, kAlpha}, -6.0 * pre * py);
  B.add({kY, kPhi}, -pre * s);
  B.add({kTheta, kPhi}, pre * py * c);
  return {A, B};
}

struct KillingTwoFormField {
  PQParams P;
  Part part = Part::Re;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    using std::cos;
    using std::sin;
    auto [A, B] = killing_two_form_parts<T>(P, x);
    const T cp = cos(x[kPsi]);
    const T sp = sin(x[kPsi]);
    Form<T> out(2, 5);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = part == Part::Re ? cp * A[k] - sp * B[k] : sp * A[k] + cp * B[k];
    return out;
  }
};

struct SpecialForms {
  RealForm psi1, psi2, phi1, phi2, re_psi, im_psi;
};

// Values of all special Killing and *-Killing forms at an open-chart point.
SpecialForms special_forms(const PQParams& P, const BasePoint& x);

RealForm eta_at(const PQParams& P, const BasePoint& x);

// Metric volume form √det g dθ∧dφ∧dy∧dα∧dψ.
RealForm volume_form(const PQParams& P, const BasePoint& x);

// Generic form fields for compositions used in tests and suites.
template <class F1, class F2>
struct WedgeField {
  F1 a;
  F2 b;
  template <class T>
  Form<T> operator()(const std::array<T, 5>& x) const {
    return wedge(a(x), b(x));
  }
};

}  // namespace ypq
