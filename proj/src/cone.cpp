#include "ypq/cone.hpp"

#include <algorithm>
#include <cmath>

namespace ypq::cone {

geom::MetricEval<6> cone_metric_at(const PQParams& P, const ConePoint& X) {
  require_in_chart(P, X);
  return geom::evaluate_metric<6>(ConeMetric{P}, X);
}

Mat<double, 6> cone_ricci_at(const PQParams& P, const ConePoint& X) {
  require_in_chart(P, X);
  return geom::ricci_frame<6>(ConeMetric{P}, X);
}

Form<Cx<ConeJet>> holomorphic_volume_jet(const PQParams& P, const std::array<ConeJet, 6>& X) {
  const auto z = toric::complex_coordinates_t<ConeJet>(P, X);
  std::array<Form<Cx<ConeJet>>, 3> dz;
  for (int i = 0; i < 3; ++i) {
    const auto re = geom::differential<6, ConeJet>(z[i].re);
    const auto im = geom::differential<6, ConeJet>(z[i].im);
    dz[i] = Form<Cx<ConeJet>>(1, 6);
    for (int k = 0; k < 6; ++k) dz[i][k] = Cx<ConeJet>{re[k], im[k]};
  }
  Form<Cx<ConeJet>> om = wedge(wedge(dz[0], dz[1]), dz[2]);
  om.scale(cexp(z[0]));
  return om;
}

AntisymForm holomorphic_volume(const PQParams& P, const ConePoint& X) {
  require_in_chart(P, X);
  const auto om = holomorphic_volume_jet(P, seed<6>(X));
  return map_form<std::complex<double>>(om, [](const Cx<ConeJet>& c) { return value_of(c); });
}

AntisymForm restrict_to_base(const AntisymForm& f) {
  AntisymForm out(f.degree(), f.dim() - 1);
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::vector<int> idx = f.tuple(k);
    if (idx.front() == 0) continue;
    for (int& i : idx) --i;
    out.add(idx, f[k]);
  }
  return out;
}

AntisymForm extract_base_killing(const PQParams& P, const ConePoint& X) {
  const AntisymForm om = holomorphic_volume(P, X);
  const std::array<double, 6> er{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  AntisymForm psi = restrict_to_base(interior(er, om));
  psi.scale(std::complex<double>(1.0 / (X[kR] * X[kR])));
  return psi;
}

AntisymForm printed_killing_two_form(const PQParams& P, const BasePoint& x) {
  return complexify(KillingTwoFormField{P, Part::Re}(x), KillingTwoFormField{P, Part::Im}(x));
}

std::complex<double> fit_complex_constant(const AntisymForm& target, const AntisymForm& model) {
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    num += std::conj(model[k]) * target[k];
    den += std::norm(model[k]);
  }
  return den > 0.0 ? num / den : std::complex<double>(0.0);
}

ExtractionFit fit_extraction_constant(const PQParams& P, const ConePoint& ref) {
  ExtractionFit fit;
  fit.reference = ref;
  fit.k = fit_complex_constant(extract_base_killing(P, ref), printed_killing_two_form(P, base_of(ref)));
  return fit;
}

double extraction_residual(const PQParams& P, const ExtractionFit& fit, const ConePoint& X) {
  AntisymForm model = printed_killing_two_form(P, base_of(X));
  model.scale(fit.k);
  return max_abs_diff(extract_base_killing(P, X), model);
}

double WedgeExpansionReport::max() const {
  return std::max({t_forms, t2t3, t1t3, t1t2, assembled, a_forms, a_times_p, sqrt_identity, printed_forms});
}

namespace {

using C = std::complex<double>;
constexpr C I{0.0, 1.0};
constexpr int kGamma = kAlpha;  // γ takes the α slot in the γ chart

AntisymForm two_form(std::initializer_list<std::pair<std::array<int, 2>, C>> terms) {
  AntisymForm f(2, 5);
  for (const auto& [idx, v] : terms) f.add({idx[0], idx[1]}, v);
  return f;
}

// dγ = dα/ℓ: a γ-chart form becomes an α-chart form by scaling every
// component containing the γ slot by 1/ℓ.
AntisymForm gamma_to_alpha(const PQParams& P, AntisymForm f) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& t = f.tuple(k);
    if (std::find(t.begin(), t.end(), kGamma) != t.end()) f[k] /= P.ell;
  }
  return f;
}

AntisymForm alpha_to_gamma(const PQParams& P, AntisymForm f) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& t = f.tuple(k);
    if (std::find(t.begin(), t.end(), kGamma) != t.end()) f[k] *= P.ell;
  }
  return f;
}

}  // namespace

std::array<AntisymForm, 3> t_forms(const PQParams& P, const BasePoint& x) {
  const double th = x[kTheta], y = x[kY];
  const double S = y * y * y - 1.5 * y * y + 0.5 * P.a;
  const double B = P.p * (P.y1 - P.y3) * (y - 1.0) / (2.0 * (1.0 - P.y1) * (y - P.y1) * (y - P.y3));
  const double t = std::tan(0.5 * th);
  std::array<AntisymForm, 3> T{AntisymForm(1, 5), AntisymForm(1, 5), AntisymForm(1, 5)};
  T[0][kTheta] = 1.0 / std::tan(th);
  T[0][kY] = 0.5 * (3.0 * y * y - 3.0 * y) / S;
  T[0][kPsi] = I;
  T[1][kTheta] = t;
  T[1][kY] = -0.5 * (3.0 * y * y - 3.0 * y) / S;
  T[1][kPhi] = I;
  T[1][kPsi] = -I;
  T[2][kTheta] = 0.5 * P.l * t;
  T[2][kY] = B;
  T[2][kPhi] = 0.5 * P.l * I;
  T[2][kPsi] = -0.5 * P.l * I;
  T[2][kGamma] = I;
  return T;
}

WedgeExpansionReport wedge_expansion_check(const PQParams& P, const BasePoint& x) {
  require_in_chart(P, x);
  WedgeExpansionReport rep;
  const double th = x[kTheta], y = x[kY], ps = x[kPsi];
  const double S = y * y * y - 1.5 * y * y + 0.5 * P.a;
  const double B = P.p * (P.y1 - P.y3) * (y - 1.0) / (2.0 * (1.0 - P.y1) * (y - P.y1) * (y - P.y3));
  const double Cy = 3.0 * y * (y - 1.0) / S;
  const double t = std::tan(0.5 * th);
  const double ct = 1.0 / std::tan(th);
  const double s = std::sin(th);
  const double l = P.l;
  const auto T = t_forms(P, x);

  // T_i against the dr-free part of dz^i at r = 1.
  const auto z = toric::complex_coordinates_t<ConeJet>(P, seed<6>(cone_point(1.0, x)));
  for (int i = 0; i < 3; ++i) {
    AntisymForm dz(1, 5);
    for (int k = 0; k < 5; ++k) dz[k] = {z[i].re.d(k + 1), z[i].im.d(k + 1)};
    rep.t_forms = std::max(rep.t_forms, max_abs_diff(alpha_to_gamma(P, dz), T[i]));
  }

  const C b = B + 0.25 * l * Cy;
  const AntisymForm t23 = two_form({{{kTheta, kY}, t * b},
                                    {{kY, kPhi}, -I * b},
                                    {{kY, kPsi}, I * b},
                                    {{kY, kGamma}, -0.5 * I * Cy},
                                    {{kTheta, kGamma}, I * t},
                                    {{kPhi, kGamma}, -1.0},
                                    {{kPsi, kGamma}, 1.0}});
  const AntisymForm t13 = two_form({{{kTheta, kY}, B * ct - 0.25 * l * Cy * t},
                                    {{kY, kPsi}, -I * b},
                                    {{kTheta, kPhi}, 0.5 * l * I * ct},
                                    {{kTheta, kGamma}, I * ct},
                                    {{kTheta, kPsi}, -I * l / (2.0 * s)},
                                    {{kY, kPhi}, 0.25 * l * I * Cy},
                                    {{kY, kGamma}, 0.5 * I * Cy},
                                    {{kPsi, kPhi}, -0.5 * l},
                                    {{kPsi, kGamma}, -1.0}});
  const AntisymForm t12 = two_form({{{kTheta, kY}, -Cy / (2.0 * s)},
                                    {{kTheta, kPhi}, I * ct},
                                    {{kTheta, kPsi}, -I / s},
                                    {{kY, kPhi}, 0.5 * I * Cy},
                                    {{kPsi, kPhi}, -1.0}});
  const AntisymForm w23 = wedge(T[1], T[2]);
  const AntisymForm w13 = wedge(T[0], T[2]);
  const AntisymForm w12 = wedge(T[0], T[1]);
  rep.t2t3 = max_abs_diff(w23, t23);
  rep.t1t3 = max_abs_diff(w13, t13);
  rep.t1t2 = max_abs_diff(w12, t12);

  const double c3 = P.p * (P.y1 - P.y3) / (1.0 - P.y1);
  AntisymForm assembled = 3.0 * w23 + 3.0 * w13;
  assembled += c3 * w12;
  assembled.scale(s * std::sqrt(S) * std::exp(I * ps));

  const MetricFunctions fn{P};
  const double ay = fn.a(y);
  AntisymForm collected = two_form({{{kTheta, kY}, ay},
                                    {{kPsi, kPhi}, s / (2.0 * P.ell)},
                                    {{kPhi, kGamma}, -3.0 * s},
                                    {{kTheta, kPsi}, I / (2.0 * P.ell)},
                                    {{kTheta, kGamma}, 3.0 * I},
                                    {{kY, kPhi}, -I * ay * s},
                                    {{kTheta, kPhi}, -I * std::cos(th) / (2.0 * P.ell)}});
  collected.scale(std::sqrt(S) * std::exp(I * ps));
  rep.assembled = max_abs_diff(assembled, collected);

  rep.a_forms = std::max(std::abs(a_fn_rational(P, y) - ay), std::abs(a_fn_root_factored(P, y) - ay));
  rep.a_times_p = std::abs(ay * fn.p(y) + 1.0 / (2.0 * P.ell));
  rep.sqrt_identity = std::abs(std::sqrt(S) * ay + 1.5 / P.ell * std::sqrt((1.0 - y) / (6.0 * fn.p(y))));
  rep.printed_forms = max_abs_diff(gamma_to_alpha(P, collected), printed_killing_two_form(P, x));
  return rep;
}

}  // namespace ypq::cone
