#pragma once

// Seeded sampling of chart points. All draws go through one mt19937_64 in a
// fixed order, so a seed determines the sample set.

#include <numbers>
#include <random>
#include <vector>

#include "ypq/params.hpp"

namespace ypq {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// θ ∈ (ε, π−ε), φ, ψ ∈ [0, 2π), y ∈ (y1+ε, y2−ε), α ∈ [0, 2πℓ).
inline BasePoint sample_base_point(const PQParams& P, Rng& rng, double margin = kInteriorMargin) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  BasePoint x{};
  x[kTheta] = uniform(rng, margin, std::numbers::pi - margin);
  x[kPhi] = uniform(rng, 0.0, two_pi);
  x[kY] = uniform(rng, P.y1 + margin, P.y2 - margin);
  x[kAlpha] = uniform(rng, 0.0, two_pi * P.ell);
  x[kPsi] = uniform(rng, 0.0, two_pi);
  return x;
}

inline ConePoint sample_cone_point(const PQParams& P, Rng& rng, double margin = kInteriorMargin) {
  const double r = uniform(rng, 0.5, 2.0);
  return cone_point(r, sample_base_point(P, rng, margin));
}

inline std::vector<BasePoint> sample_base_points(const PQParams& P, Rng& rng, std::size_t n,
                                                 double margin = kInteriorMargin) {
  std::vector<BasePoint> out(n);
  for (auto& x : out) x = sample_base_point(P, rng, margin);
  return out;
}

inline std::vector<ConePoint> sample_cone_points(const PQParams& P, Rng& rng, std::size_t n,
                                                 double margin = kInteriorMargin) {
  std::vector<ConePoint> out(n);
  for (auto& x : out) x = sample_cone_point(P, rng, margin);
  return out;
}

}  // namespace ypq
