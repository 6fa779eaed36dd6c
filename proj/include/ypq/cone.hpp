#pragma once

// The Calabi-Yau cone dr² + r² g over Y^{p,q}: metric, lifted forms,
// holomorphic volume form and the extraction of the base 2-form from it.

#include <array>
#include <complex>
#include <numbers>
#include <type_traits>

#include "ypq/cplx.hpp"
#include "ypq/form.hpp"
#include "ypq/geometry.hpp"
#include "ypq/toric.hpp"
#include "ypq/ypq.hpp"

namespace ypq::cone {

using ConeJet = Jet<6>;

struct ConeMetric {
  static constexpr int dim = 6;
  PQParams P;

  template <class T>
  Mat<T, 6> operator()(const std::array<T, 6>& X) const {
    const std::array<T, 5> x{X[1], X[2], X[3], X[4], X[5]};
    const auto gb = YpqMetric{P}(x);
    const T r2 = X[0] * X[0];
    Mat<T, 6> g{};
    g[0][0] = T(1.0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) g[i + 1][j + 1] = r2 * gb[i][j];
    return g;
  }

  template <class T>
  Mat<T, 6> inverse(const std::array<T, 6>& X) const {
    const std::array<T, 5> x{X[1], X[2], X[3], X[4], X[5]};
    const auto gb = YpqMetric{P}.inverse(x);
    const T r2 = X[0] * X[0];
    Mat<T, 6> gi{};
    gi[0][0] = T(1.0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) gi[i + 1][j + 1] = gb[i][j] / r2;
    return gi;
  }

  // dr and r θ^a; dual frame ∂_r and E_a / r.
  template <class T>
  Mat<T, 6> coframe(const std::array<T, 6>& X) const {
    const std::array<T, 5> x{X[1], X[2], X[3], X[4], X[5]};
    const auto tb = YpqMetric{P}.coframe(x);
    Mat<T, 6> th{};
    th[0][0] = T(1.0);
    for (int a = 0; a < 5; ++a)
      for (int j = 0; j < 5; ++j) th[a + 1][j + 1] = X[0] * tb[a][j];
    return th;
  }

  template <class T>
  Mat<T, 6> frame(const std::array<T, 6>& X) const {
    const std::array<T, 5> x{X[1], X[2], X[3], X[4], X[5]};
    const auto eb = YpqMetric{P}.frame(x);
    Mat<T, 6> E{};
    E[0][0] = T(1.0);
    for (int a = 0; a < 5; ++a)
      for (int j = 0; j < 5; ++j) E[a + 1][j + 1] = eb[a][j] / X[0];
    return E;
  }
};

// Ricci tensor of the cone through the orthonormal frame. Throws OutOfChart.
Mat<double, 6> cone_ricci_at(const PQParams& P, const ConePoint& X);

geom::MetricEval<6> cone_metric_at(const PQParams& P, const ConePoint& X);

// Ψ_cone = r^p dr ∧ Ψ + r^{p+1}/(p+1) dΨ for a degree-p base form field.
// On jets the result carries exact values and first derivatives.
template <class BaseField>
struct LiftedForm {
  BaseField base;

  Form<ConeJet> lift(const std::array<ConeJet, 6>& X) const {
    const std::array<ConeJet, 5> x{X[1], X[2], X[3], X[4], X[5]};
    const Form<ConeJet> psi = base(x);
    const Form<ConeJet> dpsi = geom::exterior_derivative_jet<6>(psi, 1);
    const int p = psi.degree();
    const ConeJet& r = X[0];
    ConeJet rp(1.0);
    for (int i = 0; i < p; ++i) rp = rp * r;
    Form<ConeJet> dr(1, 6);
    dr[0] = ConeJet(1.0);
    Form<ConeJet> out = wedge(dr, embed(psi, 6, 1));
    out.scale(rp);
    Form<ConeJet> top = embed(dpsi, 6, 1);
    top.scale(rp * r / static_cast<double>(p + 1));
    out += top;
    return out;
  }

  template <class T>
  Form<T> operator()(const std::array<T, 6>& X) const {
    if constexpr (std::is_same_v<T, double>) {
      return form_values(lift(seed<6>(X)));
    } else {
      static_assert(std::is_same_v<T, ConeJet>, "lifted forms are evaluated on 6-variable jets");
      return lift(X);
    }
  }
};

template <class BaseField>
LiftedForm<BaseField> lifted(BaseField f) {
  return LiftedForm<BaseField>{f};
}

// Numeric value of the lift at a cone point.
template <class BaseField>
RealForm lift_form(const BaseField& psi, const ConePoint& X) {
  return LiftedForm<BaseField>{psi}(X);
}

// Ω = e^{z¹} dz¹ ∧ dz² ∧ dz³ with dz^i obtained by differentiating the
// closed-form z^i. Components are exact to first order on jets.
Form<Cx<ConeJet>> holomorphic_volume_jet(const PQParams& P, const std::array<ConeJet, 6>& X);

AntisymForm holomorphic_volume(const PQParams& P, const ConePoint& X);

// Real or imaginary part of Ω as a form field on the cone.
struct HolomorphicVolumeField {
  PQParams P;
  Part part = Part::Re;

  template <class T>
  Form<T> operator()(const std::array<T, 6>& X) const {
    if constexpr (std::is_same_v<T, double>) {
      return form_values((*this)(seed<6>(X)));
    } else {
      static_assert(std::is_same_v<T, ConeJet>, "Ω is evaluated on 6-variable jets");
      const auto om = holomorphic_volume_jet(P, X);
      return map_form<ConeJet>(om, [&](const Cx<ConeJet>& c) { return part == Part::Re ? c.re : c.im; });
    }
  }
};

// Components of a cone form with no r index, as a base form.
AntisymForm restrict_to_base(const AntisymForm& f);

// Ψ = r^{-2} ∂_r ⌟ Ω, as a complex 2-form on the base chart.
AntisymForm extract_base_killing(const PQParams& P, const ConePoint& X);

// ℜΨ + iℑΨ in the printed closed form.
AntisymForm printed_killing_two_form(const PQParams& P, const BasePoint& x);

inline ConePoint reference_point(const PQParams& P) {
  return {1.0, std::numbers::pi / 2.0, 0.0, 0.5 * (P.y1 + P.y2), 0.0, 0.0};
}

// Complex k with extracted Ψ = k (ℜΨ + iℑΨ), least squares over components.
std::complex<double> fit_complex_constant(const AntisymForm& target, const AntisymForm& model);

struct ExtractionFit {
  std::complex<double> k;
  ConePoint reference{};
};

ExtractionFit fit_extraction_constant(const PQParams& P, const ConePoint& ref);

// max |extracted − k (ℜΨ + iℑΨ)| at X.
double extraction_residual(const PQParams& P, const ExtractionFit& fit, const ConePoint& X);

struct WedgeExpansionReport {
  double t_forms = 0.0;   // T_i vs the dr-free part of dz^i
  double t2t3 = 0.0;
  double t1t3 = 0.0;
  double t1t2 = 0.0;
  double assembled = 0.0;  // Ψ from the T_i wedges vs the collected (a(y), 1/2ℓ) form
  double a_forms = 0.0;    // three expressions for a(y)
  double a_times_p = 0.0;  // a(y) p(y) + 1/(2ℓ)
  double sqrt_identity = 0.0;  // √S a(y) + 3/(2ℓ) √((1−y)/(6p))
  double printed_forms = 0.0;  // collected form in the α chart vs ℜΨ + iℑΨ
  double max() const;
};

// Builds T_1, T_2, T_3 on the chart (θ, φ, y, γ, ψ) with γ = α/ℓ and checks
// the printed expansions componentwise at the base point x.
WedgeExpansionReport wedge_expansion_check(const PQParams& P, const BasePoint& x);

// The one-forms T_i on the γ chart.
std::array<AntisymForm, 3> t_forms(const PQParams& P, const BasePoint& x);

}  // namespace ypq::cone
