#pragma once

// Seeded generators and finite-difference oracles shared by the unit tests.

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "ypq/form.hpp"
#include "ypq/params.hpp"
#include "ypq/sampling.hpp"

namespace ypq::test {

inline constexpr std::array<std::pair<int, int>, 5> kFamilies{{{2, 1}, {3, 1}, {3, 2}, {5, 4}, {7, 3}}};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return uniform(rng_, lo, hi); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  template <int N>
  std::array<double, N> vec(double lo = -1.0, double hi = 1.0) {
    std::array<double, N> v{};
    for (auto& x : v) x = real(lo, hi);
    return v;
  }

  PQParams family() {
    const auto [p, q] = kFamilies[static_cast<std::size_t>(integer(0, kFamilies.size() - 1))];
    return make_params(p, q);
  }

  BasePoint base_point(const PQParams& P, double margin = kInteriorMargin) { return sample_base_point(P, rng_, margin); }
  ConePoint cone_point(const PQParams& P, double margin = kInteriorMargin) { return sample_cone_point(P, rng_, margin); }

  RealForm form(int degree, int dim) {
    RealForm f(degree, dim);
    for (auto& c : f.components()) c = real(-1.0, 1.0);
    return f;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

// Runs prop(gen, case) for n cases; the case index is captured on failure.
template <class Prop>
void for_all(int n, std::uint64_t seed, Prop&& prop) {
  Gen gen(seed);
  for (int i = 0; i < n; ++i) {
    CAPTURE(i);
    prop(gen, i);
  }
}

// Five-point central difference, once Richardson-extrapolated.
inline double fd_derivative(const std::function<double(double)>& f, double x, double h = 1e-4) {
  auto d5 = [&](double s) { return (-f(x + 2 * s) + 8 * f(x + s) - 8 * f(x - s) + f(x - 2 * s)) / (12 * s); };
  return (16.0 * d5(0.5 * h) - d5(h)) / 15.0;
}

template <int N>
double fd_partial(const std::function<double(const std::array<double, N>&)>& f, std::array<double, N> x, int i,
                  double h = 1e-4) {
  return fd_derivative(
      [&](double t) {
        auto y = x;
        y[i] = t;
        return f(y);
      },
      x[i], h);
}

inline double rel_err(double a, double b, double floor = 1.0) { return std::abs(a - b) / std::max(floor, std::abs(b)); }

}  // namespace ypq::test
