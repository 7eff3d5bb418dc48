// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "convexify/arrangement.hpp"
#include "convexify/curves.hpp"
#include "convexify/expansion.hpp"
#include "convexify/flow.hpp"
#include "convexify/io.hpp"
#include "convexify/lift.hpp"

namespace py = pybind11;
using namespace convexify;

namespace {

using PointArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point2> to_points(const PointArray& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw InputError("expected an (n, 2) array of points");
  std::vector<Point2> out(static_cast<std::size_t>(a.shape(0)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) out[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
  return out;
}

PointArray to_array(std::span<const Point2> pts) {
  PointArray out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(static_cast<py::ssize_t>(i), 0) = pts[i].x;
    w(static_cast<py::ssize_t>(i), 1) = pts[i].y;
  }
  return out;
}

ToleranceProfile tolerances(const std::optional<ToleranceProfile>& tol) {
  ToleranceProfile t = tol.value_or(ToleranceProfile{});
  t.validate();
  return t;
}

py::dict expansion_dict(const Framework& f, const ExpansionResult& r) {
  py::dict d;
  d["struts"] = f.struts();
  if (const auto* ex = std::get_if<Expansion>(&r)) {
    d["branch"] = "Expansion";
    d["eps"] = ex->eps;
    d["velocities"] = to_array(ex->v);
  } else {
    const auto& bl = std::get<Blocked>(r);
    d["branch"] = "Blocked";
    d["eps_star"] = bl.eps_star;
    d["omega"] = bl.certificate.omega;
    d["t"] = bl.certificate.t;
  }
  return d;
}

py::dict diagnostics_dict(const StepDiagnostics& s) {
  py::dict d;
  d["step"] = s.step;
  d["time"] = s.time;
  d["h"] = s.h;
  d["eps"] = s.eps;
  d["energy"] = s.energy;
  d["max_bar_residual"] = s.max_bar_residual;
  d["min_strut_slack"] = s.min_strut_slack;
  d["simple"] = s.simple;
  d["locked"] = s.locked;
  d["retries"] = s.retries;
  return d;
}

}  // namespace

PYBIND11_MODULE(_convexify, m) {
  m.doc() = "Convexification of simple polygons by expansive motions";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<ToleranceProfile>(m, "ToleranceProfile")
      .def(py::init([](double eq, double strut, double length, double geom) {
             ToleranceProfile t{eq, strut, length, geom};
             t.validate();
             return t;
           }),
           py::arg("eq_tol") = 1e-8, py::arg("strut_tol") = 1e-9, py::arg("length_tol") = 1e-7,
           py::arg("geom_tol") = 1e-7)
      .def_readwrite("eq_tol", &ToleranceProfile::eq_tol)
      .def_readwrite("strut_tol", &ToleranceProfile::strut_tol)
      .def_readwrite("length_tol", &ToleranceProfile::length_tol)
      .def_readwrite("geom_tol", &ToleranceProfile::geom_tol);

  py::class_<Polygon>(m, "Polygon")
      .def(py::init([](const PointArray& a) { return Polygon(to_points(a)); }), py::arg("vertices"))
      .def_property_readonly("vertices", [](const Polygon& p) { return to_array(p.vertices()); })
      .def("__len__", &Polygon::size)
      .def("__eq__", [](const Polygon& a, const Polygon& b) { return a == b; })
      .def("edge_lengths", &edge_lengths)
      .def("perimeter", &perimeter)
      .def("signed_area", &signed_area)
      .def("extent", &Polygon::extent)
      .def("turning_sines", &turning_sines)
      .def("interdistance_functional", &interdistance_functional)
      .def("is_simple", &is_simple, py::arg("geom_tol") = ToleranceProfile{}.geom_tol)
      .def("is_convex", &is_convex, py::arg("geom_tol") = ToleranceProfile{}.geom_tol)
      .def("__repr__", [](const Polygon& p) { return "<Polygon n=" + std::to_string(p.size()) + ">"; });

  m.def("dominates", &dominates, py::arg("p"), py::arg("q"), py::arg("slack") = 0.0,
        "True when every pairwise distance of p is at most the one in q, up to slack.");

  m.def("curve_catalog", [] {
    py::list out;
    for (const auto& e : curve_catalog()) {
      py::dict d;
      d["name"] = e.name;
      d["default_spec"] = e.default_spec;
      d["description"] = e.description;
      out.append(d);
    }
    return out;
  });
  m.def("sample_curve",
        [](const std::string& spec, const std::vector<double>& s) {
          const auto c = ParametricCurve::from_spec(spec);
          std::vector<Point2> pts;
          for (double v : s) pts.push_back(c.evaluate(v));
          return to_array(pts);
        },
        py::arg("spec"), py::arg("s"));
  m.def("inscribe",
        [](const std::string& spec, std::size_t n) {
          return inscribe_polygon(ParametricCurve::from_spec(spec), n);
        },
        py::arg("spec"), py::arg("n"));
  m.def("resample_by_arclength", &resample_by_arclength, py::arg("polygon"), py::arg("m"));
  m.def("repair_to_simple",
        [](const Polygon& p, const std::optional<ToleranceProfile>& tol) {
          return repair_to_simple(p, tolerances(tol));
        },
        py::arg("polygon"), py::arg("tol") = std::nullopt);

  m.def("default_struts",
        [](const Polygon& p, const std::string& rule) { return default_struts(p, parse_strut_rule(rule)); },
        py::arg("polygon"), py::arg("rule") = "nonadjacent");
  m.def("solve_expansion",
        [](const Polygon& p, std::optional<std::vector<IndexPair>> struts, const std::string& rule,
           std::size_t pin_vertex, std::size_t pin_edge, double bound,
           const std::optional<ToleranceProfile>& tol) {
          Framework f(p, struts ? *struts : default_struts(p, parse_strut_rule(rule)));
          ExpansionProblem prob{f, {pin_vertex, pin_edge}, bound};
          return expansion_dict(f, solve_infinitesimal_expansion(prob, tolerances(tol)));
        },
        py::arg("polygon"), py::arg("struts") = std::nullopt, py::arg("rule") = "nonadjacent",
        py::arg("pin_vertex") = 0, py::arg("pin_edge") = 0, py::arg("bound") = 1.0,
        py::arg("tol") = std::nullopt,
        "Maximum-margin infinitesimal expansion, or a blocking stress certificate.");

  m.def("lift",
        [](const Polygon& p, const std::vector<IndexPair>& struts, const Eigen::VectorXd& omega,
           const Eigen::VectorXd& t, const std::string& order, double tol) {
          Framework f(p, struts);
          StressCertificate s{omega, t};
          DualTraversal o = DualTraversal::BreadthFirst;
          if (order == "dfs") {
            o = DualTraversal::DepthFirst;
          } else if (order == "reverse-bfs") {
            o = DualTraversal::ReverseBreadthFirst;
          } else if (order != "bfs") {
            throw InputError("order must be bfs, dfs or reverse-bfs");
          }
          const PlanarEmbedding e = embed_framework(f, s);
          const Lift l = maxwell_lift(e, tol, o);
          const LiftReport rep = verify_lift(e, l, tol);
          py::dict d;
          d["vertices"] = to_array(e.vertices);
          d["faces"] = e.faces;
          d["outer_face"] = e.outer_face;
          std::vector<std::array<double, 3>> coeffs;
          for (const auto& a : l.faces) coeffs.push_back({a.gx, a.gy, a.offset});
          d["coefficients"] = coeffs;
          d["max_continuity"] = rep.max_continuity;
          d["max_jump"] = rep.max_jump;
          d["pass"] = rep.pass;
          return d;
        },
        py::arg("polygon"), py::arg("struts"), py::arg("omega"), py::arg("t"),
        py::arg("order") = "bfs", py::arg("tol") = 1e-9);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("times",
                             [](const Trajectory& t) {
                               std::vector<double> out;
                               for (const auto& s : t.snapshots) out.push_back(s.time);
                               return out;
                             })
      .def_property_readonly("polygons",
                             [](const Trajectory& t) {
                               std::vector<Polygon> out;
                               for (const auto& s : t.snapshots) out.push_back(s.polygon);
                               return out;
                             })
      .def_property_readonly("diagnostics",
                             [](const Trajectory& t) {
                               py::list out;
                               for (const auto& d : t.diagnostics) out.append(diagnostics_dict(d));
                               return out;
                             })
      .def_property_readonly("status", [](const Trajectory& t) { return std::string(to_string(t.status)); })
      .def_readonly("message", &Trajectory::message)
      .def_property_readonly("success", &Trajectory::success)
      .def_property_readonly("final_polygon", &Trajectory::final_polygon)
      .def("__len__", [](const Trajectory& t) { return t.snapshots.size(); })
      .def("verify",
           [](const Trajectory& t, const std::optional<ToleranceProfile>& tol) {
             const auto r = verify_trajectory(t, tolerances(tol));
             py::dict d;
             d["pass"] = r.pass;
             d["max_length_drift"] = r.max_length_drift;
             d["worst_dominance"] = r.worst_dominance;
             d["lengths_ok"] = r.lengths_ok;
             d["dominance_ok"] = r.dominance_ok;
             d["simple_ok"] = r.simple_ok;
             d["convex_ok"] = r.convex_ok;
             d["violations"] = r.violations;
             return d;
           },
           py::arg("tol") = std::nullopt)
      .def("reparameterize_by_E", &reparameterize_by_E, py::arg("frame_count") = 0)
      .def("write_csv",
           [](const Trajectory& t, const std::filesystem::path& path) {
             io::emit_trajectory_csv(t, FlowConfig{}, path);
           },
           py::arg("path"))
      .def("write_svg_frames", &io::emit_svg_frames, py::arg("dir"), py::arg("frame_count"));

  m.def("unfold",
        [](const Polygon& p, double h0, std::size_t max_steps, const std::string& rule,
           const std::string& stop, const std::optional<ToleranceProfile>& tol) {
          FlowConfig cfg;
          cfg.h0 = h0;
          cfg.max_steps = max_steps;
          cfg.strut_rule = parse_strut_rule(rule);
          cfg.stop_mode = parse_stop_mode(stop);
          cfg.tol = tolerances(tol);
          py::gil_scoped_release release;
          return unfold(p, cfg);
        },
        py::arg("polygon"), py::arg("h0") = FlowConfig{}.h0,
        py::arg("max_steps") = FlowConfig{}.max_steps, py::arg("strut_rule") = "nonadjacent",
        py::arg("stop") = "convex", py::arg("tol") = std::nullopt,
        "Expansive flow from a simple polygon to a convex one.");

  m.def("read_polygon", [](const std::filesystem::path& path) { return io::read_polygon(path).polygon; },
        py::arg("path"));
  m.def("write_polygon",
        [](const Polygon& p, const std::filesystem::path& path, const std::string& name) {
          io::write_polygon(p, path, {name, "", p.size()});
        },
        py::arg("polygon"), py::arg("path"), py::arg("name") = "");
  m.def("polygon_to_json", [](const Polygon& p) { return io::polygon_to_json(p); }, py::arg("polygon"));
  m.def("parse_polygon", [](const std::string& text) { return io::parse_polygon(text).polygon; },
        py::arg("text"));
}
