#pragma once

// Geodesic motion on Y^{p,q} as a Hamiltonian system in (θ, φ, y, α, ψ) and
// their conjugate momenta: first integrals, Poisson brackets, integration and
// the Jacobian rank test.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ypq/geometry.hpp"
#include "ypq/jet.hpp"
#include "ypq/linalg.hpp"
#include "ypq/params.hpp"
#include "ypq/sampling.hpp"
#include "ypq/ypq.hpp"

namespace ypq::dyn {

using Vec5 = Vec<double, 5>;

struct PhaseState {
  BasePoint x{};
  Vec5 P{};
};

enum Invariant : int { kH = 0, kPphi, kPpsi, kPalpha, kJ2, kK1, kK4 };
inline constexpr int kNumInvariants = 7;
inline constexpr std::array<const char*, kNumInvariants> kInvariantNames{"H", "P_phi", "P_psi", "P_alpha",
                                                                          "J2", "K1", "K4"};
using InvariantVector = std::array<double, kNumInvariants>;

// Constants relating the printed velocity polynomials to the tensor
// contractions with ky_to_sk: K1 = (4ℓ²/3) K^{(ℜΨ,ℜΨ)}(ẋ,ẋ), K4 = (1/36) K^{(Ψ₁,Ψ₁)}(ẋ,ẋ).
inline double k1_constant(const PQParams& P) { return 4.0 * P.ell * P.ell / 3.0; }
inline constexpr double kK4Constant = 1.0 / 36.0;

// sinθ below this is treated as the pole in J².
inline constexpr double kPoleEpsilon = kInteriorMargin;

// Phase-space functions, templated so they run on jets of (x, P).

template <class T>
Mat<T, 5> inverse_metric_t(const PQParams& P, const std::array<T, 5>& x) {
  return YpqMetric{P}.inverse(x);
}

template <class T>
std::array<T, 5> velocities_t(const PQParams& P, const std::array<T, 5>& x, const std::array<T, 5>& Pm) {
  return matvec<T, 5>(inverse_metric_t(P, x), Pm);
}

template <class T>
T hamiltonian_t(const PQParams& P, const std::array<T, 5>& x, const std::array<T, 5>& Pm) {
  return 0.5 * dot<T, 5>(Pm, velocities_t(P, x, Pm));
}

template <class T>
T j2_t(const std::array<T, 5>& x, const std::array<T, 5>& Pm) {
  using std::cos;
  using std::sin;
  const T s = sin(x[kTheta]);
  const T b = Pm[kPhi] + cos(x[kTheta]) * Pm[kPsi];
  return Pm[kTheta] * Pm[kTheta] + b * b / (s * s) + Pm[kPsi] * Pm[kPsi];
}

// The printed K⁽¹⁾ polynomial in velocities.
template <class T>
T k1_printed_t(const PQParams& P, const std::array<T, 5>& x, const std::array<T, 5>& v) {
  using std::cos;
  const double a = P.a;
  const T& th = x[kTheta];
  const T& y = x[kY];
  const T& td = v[kTheta];
  const T& pd = v[kPhi];
  const T& yd = v[kY];
  const T& ad = v[kAlpha];
  const T& sd = v[kPsi];
  const T Q = a + (-3.0 + 2.0 * y) * y * y;
  const T om = 1.0 - y;
  const T c = cos(th);
  const T c2 = cos(2.0 * th);
  return 6.0 * om * td * td + (3.0 + a - 6.0 * y + 2.0 * y * y * y + (-3.0 + a + 6.0 * y - 6.0 * y * y + 2.0 * y * y * y) * c2) / om * pd * pd -
         24.0 * Q * c / om * pd * ad - 4.0 * Q * c / om * pd * sd + 18.0 * om / Q * yd * yd + 72.0 * Q / om * ad * ad +
         24.0 * Q / om * ad * sd + 2.0 * Q / om * sd * sd;
}

// The printed K⁽⁴⁾ polynomial in velocities.
template <class T>
T k4_printed_t(const PQParams& P, const std::array<T, 5>& x, const std::array<T, 5>& v) {
  using std::cos;
  const double a = P.a;
  const T& th = x[kTheta];
  const T& y = x[kY];
  const T& td = v[kTheta];
  const T& pd = v[kPhi];
  const T& yd = v[kY];
  const T& ad = v[kAlpha];
  const T& sd = v[kPsi];
  const T Q = a + (-3.0 + 2.0 * y) * y * y;
  const T om = 1.0 - y;
  const T c = cos(th);
  const T c2 = cos(2.0 * th);
  const T m1 = a + (-4.0 + 5.0 * y - 2.0 * y * y) * y;
  const T m2 = a - (2.0 - y) * (2.0 - y) * (-1.0 + 2.0 * y);
  const T m3 = a + (1.0 - 2.0 * y) * y * y;
  return 6.0 * om * td * td - 24.0 * m1 * c / om * pd * ad +
         (7.0 + a - 18.0 * y + 12.0 * y * y - 2.0 * y * y * y + (1.0 + a - 6.0 * y + 6.0 * y * y - 2.0 * y * y * y) * c2) / om *
             pd * pd -
         4.0 * m2 * c / om * pd * sd + 18.0 * om / Q * yd * yd + 72.0 * m3 / om * ad * ad + 24.0 * m1 / om * ad * sd +
         2.0 * m2 / om * sd * sd;
}

// (H, P_φ, P_ψ, P_α, J², K⁽¹⁾, K⁽⁴⁾) with K⁽¹⁾, K⁽⁴⁾ from the printed
// polynomials at ẋ = g⁻¹P.
template <class T>
std::array<T, kNumInvariants> invariants_t(const PQParams& P, const std::array<T, 5>& x, const std::array<T, 5>& Pm) {
  const auto v = velocities_t(P, x, Pm);
  return {0.5 * dot<T, 5>(Pm, v), Pm[kPhi], Pm[kPsi], Pm[kAlpha], j2_t(x, Pm), k1_printed_t(P, x, v), k4_printed_t(P, x, v)};
}

// ½ Pᵀ g⁻¹ P. Throws OutOfChart.
double hamiltonian(const PQParams& P, const PhaseState& s);

// P = g ẋ.
Vec5 momenta_from_velocities(const PQParams& P, const BasePoint& x, const Vec5& xdot);
// The block formulas for P_θ, P_φ + cosθ P_ψ, P_y, P_α, P_ψ solved for P.
Vec5 momenta_from_velocities_printed(const PQParams& P, const BasePoint& x, const Vec5& xdot);
Vec5 velocities_from_momenta(const PQParams& P, const BasePoint& x, const Vec5& Pm);

// Throws PoleSingularity when sinθ < kPoleEpsilon and OutOfChart outside the chart.
InvariantVector invariants(const PQParams& P, const PhaseState& s);

struct InvariantConsistency {
  double k1_printed = 0.0;
  double k1_re = 0.0;      // (4ℓ²/3) K^{(ℜΨ,ℜΨ)}(ẋ,ẋ)
  double k1_im = 0.0;      // (4ℓ²/3) K^{(ℑΨ,ℑΨ)}(ẋ,ẋ)
  double mixed_max = 0.0;  // max |K^{(ℜΨ,ℑΨ)}_{μν}|
  double k4_printed = 0.0;
  double k4_psi1 = 0.0;    // (1/36) K^{(Ψ₁,Ψ₁)}(ẋ,ẋ)
  double k1_raw_re = 0.0;  // K^{(ℜΨ,ℜΨ)}(ẋ,ẋ) before scaling
  double k4_raw = 0.0;     // K^{(Ψ₁,Ψ₁)}(ẋ,ẋ) before scaling
};

// K⁽¹⁾ and K⁽⁴⁾ evaluated both ways at one state.
InvariantConsistency invariant_consistency(const PQParams& P, const PhaseState& s);

// ---------------------------------------------------------------------------
// Poisson brackets on phase-space jets z = (x, P).

using PhaseJet = Jet<10, 1>;
using PhaseJets = std::array<PhaseJet, 10>;

PhaseJets seed_phase(const PhaseState& s);

inline void split_phase(const PhaseJets& z, std::array<PhaseJet, 5>& x, std::array<PhaseJet, 5>& Pm) {
  for (int i = 0; i < 5; ++i) {
    x[i] = z[i];
    Pm[i] = z[5 + i];
  }
}

// Σ_i ∂f/∂x^i ∂g/∂P_i − ∂f/∂P_i ∂g/∂x^i
inline double bracket(const PhaseJet& f, const PhaseJet& g) {
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += f.d(i) * g.d(5 + i) - f.d(5 + i) * g.d(i);
  return acc;
}

// f, g: callables PhaseJets -> PhaseJet.
template <class F, class G>
double poisson_bracket(const F& f, const G& g, const PhaseState& s) {
  const auto z = seed_phase(s);
  return bracket(f(z), g(z));
}

// Jets of all seven invariants at a state.
std::array<PhaseJet, kNumInvariants> invariant_jets(const PQParams& P, const PhaseState& s);

// {I_a, I_b} for all pairs.
std::array<std::array<double, kNumInvariants>, kNumInvariants> bracket_matrix(const PQParams& P, const PhaseState& s);

// ---------------------------------------------------------------------------
// Rank of the Jacobian ∂(invariants)/∂(x, P).

inline constexpr double kRankRelTol = 1e-8;

struct RankResult {
  std::vector<double> singular_values;  // descending
  int rank = 0;
  bool degenerate = false;  // state on a symmetry locus (some momentum or sinθ near zero)
};

RankResult jacobian_rank(const PQParams& P, const PhaseState& s, std::span<const int> which);
std::vector<RankResult> jacobian_rank(const PQParams& P, std::span<const PhaseState> states, std::span<const int> which);

bool is_degenerate(const PhaseState& s);

// ---------------------------------------------------------------------------
// Random states and integration.

// x interior-uniform, P Gaussian then scaled so H = ½.
PhaseState random_state(const PQParams& P, Rng& rng, double margin = 0.05);
std::vector<PhaseState> random_states(const PQParams& P, Rng& rng, std::size_t n, double margin = 0.05);

// Phase state moving along the Reeb vector: ẋ = B, H = ½ g(B, B) = ½.
PhaseState reeb_state(const PQParams& P, const BasePoint& x);

struct IntegrationOptions {
  double t_end = 50.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  int samples = 201;           // equally spaced output times including 0 and t_end
  double chart_margin = kInteriorMargin;
  double drift_floor = 1e-3;   // relative drift uses max(|I(0)|, drift_floor)
  long max_steps = 10'000'000;
};

struct TrajectorySample {
  double t = 0.0;
  PhaseState s;
  InvariantVector inv{};
  InvariantVector drift{};
};

struct ChartExitInfo {
  double t = 0.0;
  PhaseState s;
  std::string reason;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  InvariantVector max_drift{};
  std::optional<ChartExitInfo> exit;
  long steps = 0;
};

// Hamilton's equations, ẋ = g⁻¹P, Ṗ_k = ½ ẋᵀ ∂_k g ẋ.
std::array<double, 10> hamilton_rhs(const PQParams& P, const std::array<double, 10>& z);

// Throws StepFailure if the step size collapses or the step budget runs out.
Trajectory integrate_geodesic(const PQParams& P, const PhaseState& s0, const IntegrationOptions& opt = {});

}  // namespace ypq::dyn
