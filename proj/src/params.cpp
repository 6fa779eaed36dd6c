#include "ypq/params.hpp"

#include <numbers>
#include <numeric>

namespace ypq {

namespace {

// One Newton step on a - 3y^2 + 2y^3.
double polish_root(double a, double y) {
  const double f = a - 3.0 * y * y + 2.0 * y * y * y;
  const double df = -6.0 * y + 6.0 * y * y;
  return df != 0.0 ? y - f / df : y;
}

}  // namespace

PQParams make_params(int p, int q) {
  const auto range = [&] { return OutOfRange("need 0 < q < p, got p=" + std::to_string(p) + " q=" + std::to_string(q)); };
  if (q <= 0 || p <= 0) throw range();
  if (std::gcd(p, q) != 1) throw NotCoprime("p=" + std::to_string(p) + " and q=" + std::to_string(q) + " share a factor");
  if (q >= p) throw range();
  PQParams P;
  P.p = p;
  P.q = q;
  P.l = p - q;
  const double pd = p, qd = q;
  const double s = std::sqrt(4.0 * pd * pd - 3.0 * qd * qd);
  P.a = 0.5 - (pd * pd - 3.0 * qd * qd) / (4.0 * pd * pd * pd) * s;
  P.y1 = polish_root(P.a, (2.0 * pd - 3.0 * qd - s) / (4.0 * pd));
  P.y2 = polish_root(P.a, (2.0 * pd + 3.0 * qd - s) / (4.0 * pd));
  P.y3 = polish_root(P.a, 0.5 + s / (2.0 * pd));
  P.ell = qd / (3.0 * qd * qd - 2.0 * pd * pd + pd * s);
  return P;
}

bool is_interior(const PQParams& P, const BasePoint& x, double margin) {
  const double th = x[kTheta], y = x[kY];
  return th > margin && th < std::numbers::pi - margin && y > P.y1 + margin && y < P.y2 - margin;
}

bool is_interior(const PQParams& P, const ConePoint& x, double margin) {
  return x[kR] > margin && is_interior(P, base_of(x), margin);
}

void require_in_chart(const PQParams& P, const BasePoint& x) {
  if (!is_interior(P, x))
    throw OutOfChart("theta=" + std::to_string(x[kTheta]) + " y=" + std::to_string(x[kY]) + " outside (0,pi) x (y1,y2)");
}

void require_in_chart(const PQParams& P, const ConePoint& x) {
  if (!(x[kR] > 0.0)) throw OutOfChart("r must be positive");
  require_in_chart(P, base_of(x));
}

BasePoint base_of(const ConePoint& x) { return {x[1], x[2], x[3], x[4], x[5]}; }

ConePoint cone_point(double r, const BasePoint& x) { return {r, x[0], x[1], x[2], x[3], x[4]}; }

double a_fn_rational(const PQParams& P, double y) {
  const double k = P.p * (P.y1 - P.y3) / (1.0 - P.y1);
  const double s = y * y * y - 1.5 * y * y + 0.5 * P.a;
  return 1.5 * k * (y - 1.0) / ((y - P.y1) * (y - P.y3)) - 0.5 * k * 3.0 * y * (y - 1.0) / s;
}

double a_fn_root_factored(const PQParams& P, double y) {
  return 3.0 * P.p * P.y2 * (P.y1 - P.y3) / (1.0 - P.y1) * (1.0 - y) / (2.0 * y * y * y - 3.0 * y * y + P.a);
}

}  // namespace ypq
