#pragma once

// Verification suites: each check reduces a family of residuals over sampled
// points to one max residual compared against a pinned tolerance.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ypq/params.hpp"

namespace ypq::suites {

struct Check {
  std::string name;
  double max_residual = 0.0;  // NaN when the check could not be evaluated
  double tolerance = 0.0;
  bool pass = false;
  std::string error;  // set when evaluation threw
};

struct SuiteConfig {
  int p = 2;
  int q = 1;
  std::uint64_t seed = 42;
  int samples = 100;
  double tol = 1e-7;  // rescales every pinned tolerance by tol / 1e-7
  double rtol = 1e-10;
  double atol = 1e-12;
  double t_end = 50.0;
  int trajectories = 10;
  int rank_states = 20;
};

inline constexpr double kDefaultTol = 1e-7;

struct SuiteResult {
  std::vector<Check> checks;
  std::map<std::string, double> constants;  // fitted constants worth reporting
  bool pass() const;
};

// Evaluates fn and wraps the outcome; exceptions become failed checks.
Check run_check(const std::string& name, double base_tol, const SuiteConfig& cfg, const std::function<double()>& fn);

// Individual suites; each appends its checks.
void params_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void einstein_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void killing_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void cone_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void toric_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void wedge_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void invariant_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void conservation_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);
void rank_suite(const PQParams& P, const SuiteConfig& cfg, SuiteResult& out);

// All of the above for one (p, q). Throws NotCoprime / OutOfRange for bad input.
SuiteResult run_verify(const SuiteConfig& cfg);

}  // namespace ypq::suites
