#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minkflow/checks.hpp"
#include "minkflow/commands.hpp"
#include "minkflow/config.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/experiments.hpp"

namespace py = pybind11;
using namespace minkflow;

namespace {

GaugeProfile make_profile(double c0,
                          const std::vector<std::tuple<int, double, double>>& terms) {
  std::vector<FourierSeries::Term> list;
  for (const auto& [order, c, s] : terms) list.push_back({order, c, s});
  return GaugeProfile(c0, std::move(list));
}

FourierSeries make_series(double c0,
                          const std::vector<std::tuple<int, double, double>>& terms) {
  std::vector<FourierSeries::Term> list;
  for (const auto& [order, c, s] : terms) list.push_back({order, c, s});
  return FourierSeries(c0, std::move(list));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "curve evolution by Minkowskian curvature in time-dependent "
            "Minkowski planes";

  py::register_exception<ConvexityError>(m, "ConvexityError");
  py::register_exception<ClosingConditionError>(m, "ClosingConditionError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("norm", &Vec2::norm)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
      });

  m.def("wedge", &wedge, "planar determinant [x, y]");
  m.def(
      "wedge",
      [](std::pair<double, double> x, std::pair<double, double> y) {
        return wedge({x.first, x.second}, {y.first, y.second});
      },
      "planar determinant [x, y] on plain tuples");

  py::class_<AngleGrid>(m, "AngleGrid")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &AngleGrid::size)
      .def_property_readonly("spacing", &AngleGrid::spacing)
      .def("theta", &AngleGrid::theta)
      .def("thetas", &AngleGrid::thetas);

  py::class_<GaugeProfile>(m, "GaugeProfile")
      .def(py::init(&make_profile), py::arg("c0"),
           py::arg("terms") = std::vector<std::tuple<int, double, double>>{},
           "even-harmonic radial profile; terms are (order, cos, sin)")
      .def("value", &GaugeProfile::value)
      .def("derivative", &GaugeProfile::derivative)
      .def("second_derivative", &GaugeProfile::second_derivative);

  py::class_<FourierSeries>(m, "FourierSeries")
      .def(py::init(&make_series), py::arg("c0"),
           py::arg("terms") = std::vector<std::tuple<int, double, double>>{})
      .def("value", &FourierSeries::value)
      .def("derivative", &FourierSeries::derivative)
      .def("second_derivative", &FourierSeries::second_derivative);

  py::class_<FSpec>(m, "FSpec")
      .def_static("constant", &FSpec::constant)
      .def_static("linear", &FSpec::linear, py::arg("c"))
      .def_static("exponential", &FSpec::exponential, py::arg("c"))
      .def("f", &FSpec::f)
      .def("fdot", &FSpec::fdot)
      .def("describe", &FSpec::describe);

  py::class_<GaugeSamples>(m, "GaugeSamples")
      .def_readonly("t", &GaugeSamples::t)
      .def_readonly("a", &GaugeSamples::a)
      .def_readonly("da", &GaugeSamples::da)
      .def_readonly("dda", &GaugeSamples::dda)
      .def_readonly("conv", &GaugeSamples::conv);

  py::class_<PlaneFamily>(m, "PlaneFamily")
      .def_static("fixed", &PlaneFamily::fixed, py::arg("profile"))
      .def_static("homothetic", &PlaneFamily::homothetic, py::arg("profile"),
                  py::arg("fspec"))
      .def("sample", &PlaneFamily::sample, py::arg("grid"), py::arg("t"))
      .def("homothetic_form", &PlaneFamily::homothetic_form)
      .def("f", &PlaneFamily::f)
      .def("describe", &PlaneFamily::describe);

  py::class_<BallBoundary>(m, "BallBoundary")
      .def_readonly("p", &BallBoundary::p)
      .def_readonly("dp", &BallBoundary::dp);

  m.def("unit_ball_boundary", &unit_ball_boundary);
  m.def("dual_boundary", &dual_boundary);
  m.def("ball_area", &ball_area);
  m.def("median_bound_constant", &median_bound_constant);

  py::class_<CurvatureState>(m, "CurvatureState")
      .def(py::init([](const AngleGrid& grid, std::vector<double> k, double t) {
             CurvatureState s;
             s.grid = grid;
             s.k = std::move(k);
             s.t = t;
             return s;
           }),
           py::arg("grid"), py::arg("k"), py::arg("t") = 0.0)
      .def_readonly("t", &CurvatureState::t)
      .def_readonly("k", &CurvatureState::k)
      .def_readonly("translation_acc", &CurvatureState::translation_acc);

  py::class_<CurveSnapshot>(m, "CurveSnapshot")
      .def_readonly("t", &CurveSnapshot::t)
      .def_readonly("points", &CurveSnapshot::points)
      .def_readonly("tangent", &CurveSnapshot::tangent)
      .def_readonly("lambda_", &CurveSnapshot::lambda)
      .def_readonly("k", &CurveSnapshot::k)
      .def_readonly("closing_residual", &CurveSnapshot::closing_residual)
      .def_readonly("closed", &CurveSnapshot::closed);

  m.def("q_length", &q_length);
  m.def("curve_area", &curve_area);
  m.def("median_curvature", &median_curvature);
  m.def("closing_residual", &closing_residual);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("n", &SolverConfig::n)
      .def_readwrite("cfl", &SolverConfig::cfl)
      .def_readwrite("stop_area_frac", &SolverConfig::stop_area_frac)
      .def_readwrite("stop_kmax", &SolverConfig::stop_kmax)
      .def_readwrite("t_max", &SolverConfig::t_max)
      .def_readwrite("record_every", &SolverConfig::record_every)
      .def_readwrite("snapshot_times", &SolverConfig::snapshot_times);

  py::class_<FlowRecord>(m, "FlowRecord")
      .def_readonly("t", &FlowRecord::t)
      .def_readonly("dt", &FlowRecord::dt)
      .def_readonly("area_curve", &FlowRecord::area_curve)
      .def_readonly("area_analytic", &FlowRecord::area_analytic)
      .def_readonly("q_length", &FlowRecord::q_length)
      .def_readonly("iso_ratio", &FlowRecord::iso_ratio)
      .def_readonly("k_min", &FlowRecord::k_min)
      .def_readonly("k_max", &FlowRecord::k_max)
      .def_readonly("k_star", &FlowRecord::k_star)
      .def_readonly("c_bound", &FlowRecord::c_bound)
      .def_readonly("entropy", &FlowRecord::entropy)
      .def_readonly("grad_fun", &FlowRecord::grad_fun)
      .def_readonly("sq_fun", &FlowRecord::sq_fun)
      .def_readonly("closing_residual", &FlowRecord::closing_residual)
      .def_readonly("k", &FlowRecord::k);

  py::class_<FlowTrace>(m, "FlowTrace")
      .def_readonly("records", &FlowTrace::records)
      .def_readonly("snapshots", &FlowTrace::snapshots)
      .def_property_readonly(
          "reason", [](const FlowTrace& t) { return to_string(t.reason); })
      .def_readonly("t_final", &FlowTrace::t_final)
      .def_readonly("dt_last", &FlowTrace::dt_last)
      .def_readonly("initial_area", &FlowTrace::initial_area);

  m.def(
      "rhs",
      [](const CurvatureState& state, const PlaneFamily& family) {
        SpectralDifferentiator diff(state.grid.size());
        GaugeSamples g = family.sample(state.grid, state.t);
        return evolution_rhs(state, g, diff);
      },
      py::arg("state"), py::arg("family"),
      "right-hand side of the curvature evolution equation");
  m.def(
      "adaptive_dt",
      [](const CurvatureState& state, const PlaneFamily& family, double cfl) {
        return adaptive_dt(state, family.sample(state.grid, state.t), cfl);
      },
      py::arg("state"), py::arg("family"), py::arg("cfl") = 0.2);
  m.def(
      "step",
      [](const CurvatureState& state, const PlaneFamily& family, double dt) {
        FamilySampler sampler(family, state.grid);
        SpectralDifferentiator diff(state.grid.size());
        return rk4_step(state, sampler, diff, dt);
      },
      py::arg("state"), py::arg("family"), py::arg("dt"));
  m.def(
      "reconstruct",
      [](const CurvatureState& state, const PlaneFamily& family) {
        SpectralDifferentiator diff(state.grid.size());
        GaugeSamples g = family.sample(state.grid, state.t);
        return reconstruct(state, g, diff, kClosingTolFactor);
      },
      py::arg("state"), py::arg("family"));
  m.def("evolve", &evolve, py::arg("initial"), py::arg("family"),
        py::arg("config"));

  m.def(
      "initial_from_support",
      [](const FourierSeries& h, const PlaneFamily& family, int n) {
        return initial_from_support(h, family.sample(AngleGrid(n), 0.0));
      },
      py::arg("h"), py::arg("family"), py::arg("n") = 256);
  m.def("extinction_bound", &extinction_bound, py::arg("a0"), py::arg("b"));

  py::class_<BlowupRow>(m, "BlowupRow")
      .def_readonly("f_desc", &BlowupRow::f_desc)
      .def_readonly("t_terminal", &BlowupRow::t_terminal)
      .def_readonly("t_last", &BlowupRow::t_last)
      .def_readonly("reason", &BlowupRow::reason)
      .def_readonly("bound_t", &BlowupRow::bound_t)
      .def_readonly("slack", &BlowupRow::slack)
      .def_readonly("dt_last", &BlowupRow::dt_last);

  py::class_<BlowupReport>(m, "BlowupReport")
      .def_readonly("initial_area", &BlowupReport::initial_area)
      .def_readonly("ball_area0", &BlowupReport::ball_area0)
      .def_readonly("bound_t", &BlowupReport::bound_t)
      .def_readonly("bound_section3", &BlowupReport::bound_section3)
      .def_readonly("passed", &BlowupReport::passed)
      .def_readonly("rows", &BlowupReport::rows);

  m.def(
      "blowup_study",
      [](const GaugeProfile& a0, const FourierSeries& h,
         const std::vector<FSpec>& fspecs, const SolverConfig& config) {
        InitialData u0;
        u0.kind = InitialData::Kind::FromSupport;
        u0.h = h;
        return blowup_study(a0, u0, fspecs, config);
      },
      py::arg("a0"), py::arg("h"), py::arg("fspecs"), py::arg("config"),
      "blow-up study with initial data from a support function");

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("passed", &CheckReport::passed)
      .def_readonly("worst", &CheckReport::worst)
      .def_readonly("tolerance", &CheckReport::tolerance)
      .def_readonly("detail", &CheckReport::detail);

  m.def("run_all_checks", &run_all_checks, py::arg("trace"), py::arg("family"));
}
