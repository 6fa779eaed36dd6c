#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ypq/cone.hpp"
#include "ypq/dynamics.hpp"
#include "ypq/errors.hpp"
#include "ypq/params.hpp"
#include "ypq/suites.hpp"
#include "ypq/toric.hpp"
#include "ypq/ypq.hpp"

namespace py = pybind11;
using namespace ypq;

namespace {

py::dict invariant_dict(const dyn::InvariantVector& v) {
  py::dict d;
  for (int i = 0; i < dyn::kNumInvariants; ++i) d[dyn::kInvariantNames[i]] = v[i];
  return d;
}

py::dict integrate(const PQParams& P, const BasePoint& x, const dyn::Vec5& Pm, double t_end, double rtol, double atol,
                   int samples) {
  dyn::IntegrationOptions opt;
  opt.t_end = t_end;
  opt.rtol = rtol;
  opt.atol = atol;
  opt.samples = samples;
  dyn::Trajectory tr;
  {
    py::gil_scoped_release release;
    tr = dyn::integrate_geodesic(P, dyn::PhaseState{x, Pm}, opt);
  }
  py::list t, xs, ps;
  for (const auto& s : tr.samples) {
    t.append(s.t);
    xs.append(s.s.x);
    ps.append(s.s.P);
  }
  py::dict out;
  out["t"] = t;
  out["x"] = xs;
  out["P"] = ps;
  out["max_drift"] = invariant_dict(tr.max_drift);
  out["steps"] = tr.steps;
  if (tr.exit) {
    py::dict e;
    e["t"] = tr.exit->t;
    e["x"] = tr.exit->s.x;
    e["P"] = tr.exit->s.P;
    e["reason"] = tr.exit->reason;
    out["chart_exit"] = e;
  } else {
    out["chart_exit"] = py::none();
  }
  return out;
}

py::dict verify(const suites::SuiteConfig& cfg) {
  suites::SuiteResult r;
  {
    py::gil_scoped_release release;
    r = suites::run_verify(cfg);
  }
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["max_residual"] = c.max_residual;
    d["tolerance"] = c.tolerance;
    d["pass"] = c.pass;
    if (!c.error.empty()) d["error"] = c.error;
    checks.append(d);
  }
  py::dict out;
  out["checks"] = checks;
  out["constants"] = r.constants;
  out["pass"] = r.pass();
  return out;
}

}  // namespace

PYBIND11_MODULE(_ypq, m) {
  m.doc() = "Y^{p,q} geometry core";

  // Translators run newest first, so the subclasses win over the base.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SingularMetric>(m, "SingularMetric", base);
  py::register_exception<OutOfChart>(m, "OutOfChart", base);
  py::register_exception<NotCoprime>(m, "NotCoprime", base);
  py::register_exception<OutOfRange>(m, "OutOfRange", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<NewtonDivergence>(m, "NewtonDivergence", base);
  py::register_exception<PoleSingularity>(m, "PoleSingularity", base);
  py::register_exception<StepFailure>(m, "StepFailure", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  py::class_<PQParams>(m, "PQParams")
      .def_readonly("p", &PQParams::p)
      .def_readonly("q", &PQParams::q)
      .def_readonly("l", &PQParams::l)
      .def_readonly("a", &PQParams::a)
      .def_readonly("ell", &PQParams::ell)
      .def_readonly("y1", &PQParams::y1)
      .def_readonly("y2", &PQParams::y2)
      .def_readonly("y3", &PQParams::y3)
      .def("__repr__", [](const PQParams& P) {
        return "PQParams(p=" + std::to_string(P.p) + ", q=" + std::to_string(P.q) + ")";
      });
  m.def("make_params", &make_params, py::arg("p"), py::arg("q"));

  m.def("metric", [](const PQParams& P, const BasePoint& x) { return YpqMetric{P}(x); }, py::arg("params"), py::arg("x"));
  m.def("ricci", &ricci_at, py::arg("params"), py::arg("x"));
  m.def("cone_ricci", &cone::cone_ricci_at, py::arg("params"), py::arg("X"));

  m.def(
      "toric_model",
      [](const PQParams& P) {
        const auto tm = toric::ypq_toric_model(P);
        py::dict d;
        d["normals"] = tm.normals;
        d["reeb"] = tm.reeb;
        return d;
      },
      py::arg("params"));
  m.def("momentum_map", &toric::momentum_map, py::arg("params"), py::arg("r"), py::arg("x"));
  m.def(
      "legendre_roundtrip",
      [](const PQParams& P, const toric::MomentPoint& y) {
        const auto L = toric::legendre_roundtrip(toric::ypq_toric_model(P), y);
        py::dict d;
        d["x"] = L.x;
        d["y_back"] = L.y_back;
        d["F"] = L.F;
        d["roundtrip"] = L.roundtrip;
        d["identity_residual"] = L.identity_residual;
        d["det_product"] = L.det_product;
        return d;
      },
      py::arg("params"), py::arg("y"));

  m.def(
      "hamiltonian", [](const PQParams& P, const BasePoint& x, const dyn::Vec5& Pm) { return dyn::hamiltonian(P, {x, Pm}); },
      py::arg("params"), py::arg("x"), py::arg("P"));
  m.def(
      "invariants",
      [](const PQParams& P, const BasePoint& x, const dyn::Vec5& Pm) { return invariant_dict(dyn::invariants(P, {x, Pm})); },
      py::arg("params"), py::arg("x"), py::arg("P"));
  m.def(
      "jacobian_rank",
      [](const PQParams& P, const BasePoint& x, const dyn::Vec5& Pm) {
        const std::array<int, dyn::kNumInvariants> all{0, 1, 2, 3, 4, 5, 6};
        const auto r = dyn::jacobian_rank(P, dyn::PhaseState{x, Pm}, all);
        return py::make_tuple(r.rank, r.singular_values);
      },
      py::arg("params"), py::arg("x"), py::arg("P"));
  m.def("integrate", &integrate, py::arg("params"), py::arg("x"), py::arg("P"), py::arg("t_end") = 50.0,
        py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12, py::arg("samples") = 201);

  py::class_<suites::SuiteConfig>(m, "SuiteConfig")
      .def(py::init<>())
      .def_readwrite("p", &suites::SuiteConfig::p)
      .def_readwrite("q", &suites::SuiteConfig::q)
      .def_readwrite("seed", &suites::SuiteConfig::seed)
      .def_readwrite("samples", &suites::SuiteConfig::samples)
      .def_readwrite("tol", &suites::SuiteConfig::tol)
      .def_readwrite("rtol", &suites::SuiteConfig::rtol)
      .def_readwrite("atol", &suites::SuiteConfig::atol)
      .def_readwrite("t_end", &suites::SuiteConfig::t_end)
      .def_readwrite("trajectories", &suites::SuiteConfig::trajectories)
      .def_readwrite("rank_states", &suites::SuiteConfig::rank_states);
  m.def("verify", &verify, py::arg("config"));
}
