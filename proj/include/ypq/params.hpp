#pragma once

// The Y^{p,q} family: scalars derived from the integers (p, q), the metric
// functions of y, and chart validation.

#include <array>
#include <cmath>
#include <string>

#include "ypq/errors.hpp"
#include "ypq/jet.hpp"

namespace ypq {

inline constexpr double kInteriorMargin = 1e-3;

struct PQParams {
  int p = 0;
  int q = 0;
  int l = 0;        // p - q
  double a = 0.0;   // cubic constant, 0 < a < 1
  double ell = 0.0; // period scale of alpha = ell * gamma
  double y1 = 0.0, y2 = 0.0, y3 = 0.0;  // roots of a - 3y^2 + 2y^3, y1 < 0 < y2 < 1 < y3
};

// Throws NotCoprime or OutOfRange.
PQParams make_params(int p, int q);

inline double cubic(const PQParams& P, double y) { return P.a - 3.0 * y * y + 2.0 * y * y * y; }

// Coordinate order in the base chart.
enum BaseIndex : int { kTheta = 0, kPhi = 1, kY = 2, kAlpha = 3, kPsi = 4 };
// Cone chart prepends r.
enum ConeIndex : int { kR = 0 };

using BasePoint = std::array<double, 5>;
using ConePoint = std::array<double, 6>;

enum class ChartId { Base5, Cone6 };

// Open-chart checks: theta in (margin, pi - margin), y in (y1 + margin, y2 - margin).
bool is_interior(const PQParams& P, const BasePoint& x, double margin = 0.0);
bool is_interior(const PQParams& P, const ConePoint& x, double margin = 0.0);
void require_in_chart(const PQParams& P, const BasePoint& x);
void require_in_chart(const PQParams& P, const ConePoint& x);

BasePoint base_of(const ConePoint& x);
ConePoint cone_point(double r, const BasePoint& x);

// Metric functions of y (c = 1).
struct MetricFunctions {
  const PQParams& P;

  template <class T>
  T w(const T& y) const {
    return 2.0 * (P.a - y * y) / (1.0 - y);
  }
  template <class T>
  T q(const T& y) const {
    return (P.a - 3.0 * y * y + 2.0 * y * y * y) / (P.a - y * y);
  }
  template <class T>
  T f(const T& y) const {
    return (P.a - 2.0 * y + y * y) / (6.0 * (P.a - y * y));
  }
  // p(y) = (2y^3 - 3y^2 + a) / (3(1 - y))
  template <class T>
  T p(const T& y) const {
    return (2.0 * y * y * y - 3.0 * y * y + P.a) / (3.0 * (1.0 - y));
  }
  // a(y) = -(3 / 2 ell) (1 - y) / (2y^3 - 3y^2 + a)
  template <class T>
  T a(const T& y) const {
    return -3.0 / (2.0 * P.ell) * (1.0 - y) / (2.0 * y * y * y - 3.0 * y * y + P.a);
  }
  // y^3 - 3y^2/2 + a/2
  template <class T>
  T s(const T& y) const {
    return y * y * y - 1.5 * y * y + 0.5 * P.a;
  }
};

// The two alternative printed forms of a(y), used as cross-checks.
double a_fn_rational(const PQParams& P, double y);
double a_fn_root_factored(const PQParams& P, double y);

}  // namespace ypq
