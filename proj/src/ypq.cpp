#include "ypq/ypq.hpp"

namespace ypq {

geom::MetricEval<5> metric_at(const PQParams& P, const BasePoint& x) {
  require_in_chart(P, x);
  return geom::evaluate_metric<5>(YpqMetric{P}, x);
}

Mat<double, 5> ricci_at(const PQParams& P, const BasePoint& x) {
  require_in_chart(P, x);
  return geom::ricci_frame<5>(YpqMetric{P}, x);
}

RealForm eta_at(const PQParams& P, const BasePoint& x) { return EtaField{P}(x); }

SpecialForms special_forms(const PQParams& P, const BasePoint& x) {
  require_in_chart(P, x);
  SpecialForms s;
  s.psi1 = Psi1Field{P}(x);
  s.psi2 = Psi2Field{P}(x);
  s.phi1 = Phi1Field{P}(x);
  s.phi2 = Phi2Field{P}(x);
  s.re_psi = KillingTwoFormField{P, Part::Re}(x);
  s.im_psi = KillingTwoFormField{P, Part::Im}(x);
  return s;
}

RealForm volume_form(const PQParams& P, const BasePoint& x) {
  const double det = determinant<double, 5>(YpqMetric{P}(x));
  RealForm v(5, 5);
  v[0] = std::sqrt(det);
  return v;
}

}  // namespace ypq
