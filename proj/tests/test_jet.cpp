#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "ypq/jet.hpp"
#include "ypq/ypq.hpp"

using namespace ypq;
using test::Gen;

namespace {

using J3 = Jet<3>;

// A composite exercising every elementary function.
template <class T>
T composite(const std::array<T, 3>& x) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  using std::tan;
  const T u = x[0] * x[1] + 2.0;
  return sin(x[0]) * cos(x[1]) + tan(0.3 * x[2]) / u + sqrt(u) * log(1.5 + x[2] * x[2]) + exp(-x[0] * x[2]) +
         pow(u, 1.7) - cot(x[1] + 2.0) + sq(x[2] - x[0]);
}

}  // namespace

TEST_CASE("jet variables carry unit gradients") {
  const auto x = seed<3>({0.1, 0.2, 0.3});
  for (int i = 0; i < 3; ++i) {
    CHECK(x[i].value() == doctest::Approx(0.1 * (i + 1)));
    for (int j = 0; j < 3; ++j) {
      CHECK(x[i].d(j) == (i == j ? 1.0 : 0.0));
      CHECK(x[i].dd(i, j) == 0.0);
    }
  }
}

TEST_CASE("jet product and quotient rules") {
  const J3 a = J3::variable(1.3, 0);
  const J3 b = J3::variable(-0.7, 1);
  const J3 p = a * b;
  CHECK(p.d(0) == doctest::Approx(-0.7));
  CHECK(p.d(1) == doctest::Approx(1.3));
  CHECK(p.dd(0, 1) == doctest::Approx(1.0));
  const J3 r = a / b;
  CHECK(r.d(1) == doctest::Approx(-1.3 / (0.49)));
  CHECK(r.dd(1, 1) == doctest::Approx(2.0 * 1.3 / std::pow(-0.7, 3)));
}

TEST_CASE("jet composite matches finite differences to second order") {
  test::for_all(50, 11, [](Gen& g, int) {
    const auto x = g.vec<3>(-0.8, 0.8);
    const J3 f = composite(seed<3>(x));
    const std::function<double(const std::array<double, 3>&)> fv = [](const std::array<double, 3>& y) {
      return composite(y);
    };
    CHECK(f.value() == doctest::Approx(fv(x)).epsilon(1e-14));
    for (int i = 0; i < 3; ++i) {
      CHECK(test::rel_err(f.d(i), test::fd_partial<3>(fv, x, i)) < 1e-8);
      for (int j = 0; j < 3; ++j) {
        const std::function<double(const std::array<double, 3>&)> di = [&](const std::array<double, 3>& y) {
          return composite(seed<3>(y)).d(i);
        };
        CHECK(test::rel_err(f.dd(i, j), test::fd_partial<3>(di, x, j)) < 1e-7);
      }
    }
  });
}

TEST_CASE("jet hessian is exactly symmetric") {
  test::for_all(20, 12, [](Gen& g, int) {
    const J3 f = composite(seed<3>(g.vec<3>(-0.5, 0.5)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(f.dd(i, j) == f.dd(j, i));
  });
}

TEST_CASE("first-order jets drop the hessian") {
  using J1 = Jet<2, 1>;
  const J1 a = J1::variable(0.4, 0);
  const J1 b = J1::variable(0.9, 1);
  const J1 f = sin(a) * exp(b);
  CHECK(f.d(0) == doctest::Approx(std::cos(0.4) * std::exp(0.9)));
  CHECK(f.d(1) == doctest::Approx(std::sin(0.4) * std::exp(0.9)));
  CHECK(f.dd(0, 1) == 0.0);
}

TEST_CASE("metric component jets match finite differences") {
  // Every component of the Y^{p,q} metric, first and second partials.
  test::for_all(100, 13, [](Gen& g, int) {
    const PQParams P = g.family();
    const BasePoint x = g.base_point(P, 0.02);
    const auto gj = YpqMetric{P}(seed<5>(x));
    for (int a = 0; a < 5; ++a)
      for (int b = a; b < 5; ++b) {
        const std::function<double(const BasePoint&)> comp = [&](const BasePoint& y) { return YpqMetric{P}(y)[a][b]; };
        for (int i = 0; i < 5; ++i) {
          CHECK(test::rel_err(gj[a][b].d(i), test::fd_partial<5>(comp, x, i)) < 1e-6);
          const std::function<double(const BasePoint&)> di = [&](const BasePoint& y) {
            return YpqMetric{P}(seed<5>(y))[a][b].d(i);
          };
          for (int j = i; j < 5; ++j) CHECK(test::rel_err(gj[a][b].dd(i, j), test::fd_partial<5>(di, x, j)) < 1e-6);
        }
      }
  });
}
