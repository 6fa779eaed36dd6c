#include "ypq/dynamics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "ypq/errors.hpp"

namespace ypq::dyn {

namespace odeint = boost::numeric::odeint;

double hamiltonian(const PQParams& P, const PhaseState& s) {
  require_in_chart(P, s.x);
  return hamiltonian_t<double>(P, s.x, s.P);
}

Vec5 momenta_from_velocities(const PQParams& P, const BasePoint& x, const Vec5& xdot) {
  require_in_chart(P, x);
  return matvec<double, 5>(YpqMetric{P}(x), xdot);
}

Vec5 momenta_from_velocities_printed(const PQParams& P, const BasePoint& x, const Vec5& xdot) {
  require_in_chart(P, x);
  const MetricFunctions fn{P};
  const double y = x[kY];
  const double c = std::cos(x[kTheta]);
  const double s = std::sin(x[kTheta]);
  const double w = fn.w(y), q = fn.q(y), f = fn.f(y);
  const double e = xdot[kPsi] - c * xdot[kPhi];
  Vec5 Pm{};
  Pm[kTheta] = (1.0 - y) / 6.0 * xdot[kTheta];
  Pm[kY] = xdot[kY] / (6.0 * fn.p(y));
  Pm[kAlpha] = w * (xdot[kAlpha] + f * e);
  Pm[kPsi] = w * f * xdot[kAlpha] + (q / 9.0 + w * f * f) * e;
  Pm[kPhi] = (1.0 - y) / 6.0 * s * s * xdot[kPhi] - c * Pm[kPsi];
  return Pm;
}

Vec5 velocities_from_momenta(const PQParams& P, const BasePoint& x, const Vec5& Pm) {
  require_in_chart(P, x);
  return velocities_t<double>(P, x, Pm);
}

InvariantVector invariants(const PQParams& P, const PhaseState& s) {
  require_in_chart(P, s.x);
  if (std::sin(s.x[kTheta]) < kPoleEpsilon) throw PoleSingularity("sin(theta) below " + std::to_string(kPoleEpsilon));
  return invariants_t<double>(P, s.x, s.P);
}

InvariantConsistency invariant_consistency(const PQParams& P, const PhaseState& s) {
  const auto inv = invariants(P, s);
  const auto g_inv = YpqMetric{P}.inverse(s.x);
  const Vec5 v = matvec<double, 5>(g_inv, s.P);
  const RealForm re = KillingTwoFormField{P, Part::Re}(s.x);
  const RealForm im = KillingTwoFormField{P, Part::Im}(s.x);
  const RealForm psi1 = Psi1Field{P}(s.x);
  auto quad = [&](const Mat<double, 5>& K) { return dot<double, 5>(v, matvec<double, 5>(K, v)); };
  InvariantConsistency c;
  c.k1_printed = inv[kK1];
  c.k4_printed = inv[kK4];
  c.k1_raw_re = quad(geom::ky_to_sk<5, double>(re, re, g_inv));
  c.k1_re = k1_constant(P) * c.k1_raw_re;
  c.k1_im = k1_constant(P) * quad(geom::ky_to_sk<5, double>(im, im, g_inv));
  const auto mixed = geom::ky_to_sk<5, double>(re, im, g_inv);
  for (const auto& row : mixed)
    for (double m : row) c.mixed_max = std::max(c.mixed_max, std::abs(m));
  c.k4_raw = quad(geom::ky_to_sk<5, double>(psi1, psi1, g_inv));
  c.k4_psi1 = kK4Constant * c.k4_raw;
  return c;
}

PhaseJets seed_phase(const PhaseState& s) {
  PhaseJets z;
  for (int i = 0; i < 5; ++i) {
    z[i] = PhaseJet::variable(s.x[i], i);
    z[5 + i] = PhaseJet::variable(s.P[i], 5 + i);
  }
  return z;
}

std::array<PhaseJet, kNumInvariants> invariant_jets(const PQParams& P, const PhaseState& s) {
  require_in_chart(P, s.x);
  const auto z = seed_phase(s);
  std::array<PhaseJet, 5> x, Pm;
  split_phase(z, x, Pm);
  return invariants_t<PhaseJet>(P, x, Pm);
}

std::array<std::array<double, kNumInvariants>, kNumInvariants> bracket_matrix(const PQParams& P, const PhaseState& s) {
  const auto I = invariant_jets(P, s);
  std::array<std::array<double, kNumInvariants>, kNumInvariants> B{};
  for (int a = 0; a < kNumInvariants; ++a)
    for (int b = 0; b < kNumInvariants; ++b) B[a][b] = bracket(I[a], I[b]);
  return B;
}

bool is_degenerate(const PhaseState& s) {
  double pmax = 0.0;
  for (double p : s.P) pmax = std::max(pmax, std::abs(p));
  if (pmax == 0.0) return true;
  for (double p : s.P)
    if (std::abs(p) < 1e-6 * pmax) return true;
  return std::sin(s.x[kTheta]) < 1e-3;
}

RankResult jacobian_rank(const PQParams& P, const PhaseState& s, std::span<const int> which) {
  const auto I = invariant_jets(P, s);
  Eigen::MatrixXd J(static_cast<Eigen::Index>(which.size()), 10);
  for (std::size_t r = 0; r < which.size(); ++r) {
    const int a = which[r];
    if (a < 0 || a >= kNumInvariants) throw ConfigError("invariant index " + std::to_string(a) + " out of range");
    for (int c = 0; c < 10; ++c) J(static_cast<Eigen::Index>(r), c) = I[a].d(c);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  RankResult res;
  res.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = res.singular_values.empty() ? 0.0 : res.singular_values.front();
  for (double v : res.singular_values)
    if (v > smax * kRankRelTol) ++res.rank;
  res.degenerate = is_degenerate(s);
  return res;
}

std::vector<RankResult> jacobian_rank(const PQParams& P, std::span<const PhaseState> states, std::span<const int> which) {
  std::vector<RankResult> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(jacobian_rank(P, s, which));
  return out;
}

PhaseState random_state(const PQParams& P, Rng& rng, double margin) {
  PhaseState s;
  s.x = sample_base_point(P, rng, margin);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (auto& p : s.P) p = n01(rng);
  const double H = hamiltonian_t<double>(P, s.x, s.P);
  const double k = std::sqrt(0.5 / H);
  for (auto& p : s.P) p *= k;
  return s;
}

std::vector<PhaseState> random_states(const PQParams& P, Rng& rng, std::size_t n, double margin) {
  std::vector<PhaseState> out(n);
  for (auto& s : out) s = random_state(P, rng, margin);
  return out;
}

PhaseState reeb_state(const PQParams& P, const BasePoint& x) {
  return {x, momenta_from_velocities(P, x, reeb_at(P))};
}

std::array<double, 10> hamilton_rhs(const PQParams& P, const std::array<double, 10>& z) {
  std::array<Jet<5, 1>, 5> xj;
  for (int i = 0; i < 5; ++i) xj[i] = Jet<5, 1>::variable(z[i], i);
  const Mat<Jet<5, 1>, 5> gj = YpqMetric{P}(xj);
  const Mat<double, 5> g_inv = YpqMetric{P}.inverse(BasePoint{z[0], z[1], z[2], z[3], z[4]});
  Vec5 Pm{};
  for (int i = 0; i < 5; ++i) Pm[i] = z[5 + i];
  const Vec5 v = matvec<double, 5>(g_inv, Pm);
  std::array<double, 10> dz{};
  for (int i = 0; i < 5; ++i) dz[i] = v[i];
  for (int k = 0; k < 5; ++k) {
    double acc = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) acc += v[i] * gj[i][j].d(k) * v[j];
    dz[5 + k] = 0.5 * acc;
  }
  return dz;
}

namespace {

using State = std::array<double, 10>;

PhaseState unpack(const State& z) {
  PhaseState s;
  for (int i = 0; i < 5; ++i) {
    s.x[i] = z[i];
    s.P[i] = z[5 + i];
  }
  return s;
}

// Empty when inside the chart by `margin`, otherwise which boundary is near.
std::string chart_violation(const PQParams& P, const State& z, double margin) {
  const double th = z[kTheta], y = z[kY];
  if (!std::isfinite(th) || !std::isfinite(y)) return "non-finite state";
  if (th <= margin) return "theta -> 0";
  if (th >= std::numbers::pi - margin) return "theta -> pi";
  if (y <= P.y1 + margin) return "y -> y1";
  if (y >= P.y2 - margin) return "y -> y2";
  return {};
}

struct LeftChart {};

}  // namespace

Trajectory integrate_geodesic(const PQParams& P, const PhaseState& s0, const IntegrationOptions& opt) {
  if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw ConfigError("rtol and atol must be positive");
  if (!(opt.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (opt.samples < 2) throw ConfigError("need at least two output samples");
  require_in_chart(P, s0.x);

  Trajectory tr;
  const InvariantVector I0 = invariants(P, s0);
  auto record = [&](double t, const State& z) {
    TrajectorySample smp;
    smp.t = t;
    smp.s = unpack(z);
    smp.inv = invariants_t<double>(P, smp.s.x, smp.s.P);
    for (int k = 0; k < kNumInvariants; ++k) {
      smp.drift[k] = std::abs(smp.inv[k] - I0[k]) / std::max(std::abs(I0[k]), opt.drift_floor);
      tr.max_drift[k] = std::max(tr.max_drift[k], smp.drift[k]);
    }
    tr.samples.push_back(smp);
  };

  State z{};
  for (int i = 0; i < 5; ++i) {
    z[i] = s0.x[i];
    z[5 + i] = s0.P[i];
  }
  std::vector<double> times(static_cast<std::size_t>(opt.samples));
  for (int i = 0; i < opt.samples; ++i) times[i] = opt.t_end * i / (opt.samples - 1);

  record(0.0, z);
  if (opt.t_end == 0.0) return tr;

  auto sys = [&](const State& zz, State& dz, double) {
    if (!chart_violation(P, zz, 0.0).empty()) throw LeftChart{};
    dz = hamilton_rhs(P, zz);
  };

  auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
  const double dt0 = std::min(1e-3, opt.t_end);
  stepper.initialize(z, 0.0, dt0);
  std::size_t next = 1;
  State tmp{};
  while (next < times.size()) {
    std::pair<double, double> span;
    try {
      span = stepper.do_step(sys);
    } catch (const LeftChart&) {
      ChartExitInfo info;
      info.t = stepper.current_time();
      info.s = unpack(stepper.current_state());
      info.reason = "integration stage left the chart";
      tr.exit = info;
      return tr;
    }
    ++tr.steps;
    if (tr.steps > opt.max_steps) throw StepFailure("step budget of " + std::to_string(opt.max_steps) + " exhausted");
    if (!(span.second - span.first > 1e-14 * std::max(1.0, span.second)))
      throw StepFailure("step size collapsed at t = " + std::to_string(span.first));

    const std::string why = chart_violation(P, stepper.current_state(), opt.chart_margin);
    double t_stop = span.second;
    if (!why.empty()) {
      // Locate the first crossing of the margin inside the step.
      double lo = span.first, hi = span.second;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        stepper.calc_state(mid, tmp);
        if (chart_violation(P, tmp, opt.chart_margin).empty())
          lo = mid;
        else
          hi = mid;
      }
      t_stop = lo;
    }
    while (next < times.size() && times[next] <= t_stop) {
      stepper.calc_state(times[next], tmp);
      record(times[next], tmp);
      ++next;
    }
    if (!why.empty()) {
      ChartExitInfo info;
      info.t = t_stop;
      stepper.calc_state(t_stop, tmp);
      info.s = unpack(tmp);
      info.reason = why;
      tr.exit = info;
      return tr;
    }
  }
  return tr;
}

}  // namespace ypq::dyn
