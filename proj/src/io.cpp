// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace convexify::io {

using nlohmann::json;

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

[[noreturn]] void structural(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what, npos);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // The library reports one past the offending byte.
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError("malformed JSON at byte " + std::to_string(at) + ": " + e.what(), at);
  }
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) structural(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) structural(where, "missing \"" + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) structural(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) structural(where, "number is not finite");
  return d;
}

std::size_t index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) structural(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

void check_header(const json& doc, const std::string& format) {
  const json& f = member(doc, "format", "document");
  if (!f.is_string() || f.get<std::string>() != format) {
    structural("format", "expected \"" + format + "\"");
  }
  const json& v = member(doc, "version", "document");
  if (!v.is_number_integer() || v.get<long long>() != kFormatVersion) {
    structural("version", "unsupported version " + v.dump() + " (expected " +
                              std::to_string(kFormatVersion) + ")");
  }
}

json header(const std::string& format) {
  json doc = json::object();
  doc["format"] = format;
  doc["version"] = kFormatVersion;
  return doc;
}

json points_json(std::span<const Point2> pts) {
  json out = json::array();
  for (const auto& q : pts) out.push_back({q.x, q.y});
  return out;
}

std::vector<Point2> parse_points(const json& arr, const std::string& where) {
  if (!arr.is_array()) structural(where, "expected an array of [x, y] pairs");
  std::vector<Point2> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) structural(at, "expected an [x, y] pair");
    out.push_back({number(arr[i][0], at), number(arr[i][1], at)});
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd parse_vector(const json& arr, const std::string& where) {
  if (!arr.is_array()) structural(where, "expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number(arr[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

json tolerances_json(const ToleranceProfile& t) {
  return {{"eq_tol", t.eq_tol},
          {"strut_tol", t.strut_tol},
          {"length_tol", t.length_tol},
          {"geom_tol", t.geom_tol}};
}

json framework_body(const Framework& f, const StressCertificate* stress) {
  json doc = header("convexify.framework");
  doc["vertices"] = points_json(f.polygon().vertices());
  json struts = json::array();
  for (const auto& [i, j] : f.struts()) struts.push_back({i, j});
  doc["struts"] = std::move(struts);
  if (stress != nullptr) {
    doc["stress"] = {{"omega", vector_json(stress->omega)}, {"t", vector_json(stress->t)}};
  }
  return doc;
}

FrameworkDocument framework_from(const json& doc) {
  check_header(doc, "convexify.framework");
  Polygon p(parse_points(member(doc, "vertices", "document"), "vertices"));
  const json& arr = member(doc, "struts", "document");
  if (!arr.is_array()) structural("struts", "expected an array of [i, j] pairs");
  std::vector<IndexPair> struts;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = "struts[" + std::to_string(k) + "]";
    if (!arr[k].is_array() || arr[k].size() != 2) structural(at, "expected an [i, j] pair");
    struts.emplace_back(index(arr[k][0], at), index(arr[k][1], at));
  }
  // Stress entries follow the framework's sorted strut order, so keep the
  // document's order intact for them.
  const std::vector<IndexPair> listed = struts;
  FrameworkDocument out{Framework(std::move(p), std::move(struts)), std::nullopt};
  if (const auto it = doc.find("stress"); it != doc.end() && !it->is_null()) {
    StressCertificate s;
    s.omega = parse_vector(member(*it, "omega", "stress"), "stress.omega");
    const Eigen::VectorXd t = parse_vector(member(*it, "t", "stress"), "stress.t");
    if (static_cast<std::size_t>(s.omega.size()) != out.framework.bar_count()) {
      structural("stress.omega", "expected one entry per edge");
    }
    if (static_cast<std::size_t>(t.size()) != listed.size() ||
        listed.size() != out.framework.strut_count()) {
      structural("stress.t", "expected one entry per distinct strut");
    }
    s.t = Eigen::VectorXd::Zero(t.size());
    const auto& sorted = out.framework.struts();
    for (std::size_t k = 0; k < listed.size(); ++k) {
      IndexPair key = listed[k];
      if (key.first > key.second) std::swap(key.first, key.second);
      const auto pos = std::lower_bound(sorted.begin(), sorted.end(), key) - sorted.begin();
      s.t(pos) = t(static_cast<Eigen::Index>(k));
    }
    out.stress = std::move(s);
  }
  return out;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    structural(where, "expected a number, got \"" + std::string(s) + "\"");
  }
  return v;
}

std::size_t parse_size(std::string_view s, const std::string& where) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    structural(where, "expected a nonnegative integer, got \"" + std::string(s) + "\"");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

FlowStatus parse_status(const std::string& s) {
  for (auto st : {FlowStatus::Converged, FlowStatus::Blocked, FlowStatus::StepUnderflow,
                  FlowStatus::MaxSteps, FlowStatus::NumericalFailure}) {
    if (s == to_string(st)) return st;
  }
  structural("status", "unknown status \"" + s + "\"");
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing " + path.string());
}

std::string polygon_to_json(const Polygon& p, const PolygonMetadata& meta) {
  json doc = header("convexify.polygon");
  doc["vertices"] = points_json(p.vertices());
  json m = json::object();
  if (!meta.name.empty()) m["name"] = meta.name;
  if (!meta.source.empty()) m["source"] = meta.source;
  if (meta.n) m["n"] = *meta.n;
  if (!m.empty()) doc["metadata"] = std::move(m);
  return doc.dump(2) + "\n";
}

PolygonDocument parse_polygon(std::string_view text) {
  const json doc = parse_json(text);
  check_header(doc, "convexify.polygon");
  PolygonDocument out{Polygon(parse_points(member(doc, "vertices", "document"), "vertices")), {}};
  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) structural("metadata", "expected an object");
    if (const auto f = it->find("name"); f != it->end()) {
      if (!f->is_string()) structural("metadata.name", "expected a string");
      out.metadata.name = f->get<std::string>();
    }
    if (const auto f = it->find("source"); f != it->end()) {
      if (!f->is_string()) structural("metadata.source", "expected a string");
      out.metadata.source = f->get<std::string>();
    }
    if (const auto f = it->find("n"); f != it->end()) out.metadata.n = index(*f, "metadata.n");
  }
  return out;
}

PolygonDocument read_polygon(const std::filesystem::path& path) {
  return parse_polygon(read_text(path));
}

void write_polygon(const Polygon& p, const std::filesystem::path& path,
                   const PolygonMetadata& meta) {
  write_text(path, polygon_to_json(p, meta));
}

std::string framework_to_json(const Framework& f, const StressCertificate* stress) {
  return framework_body(f, stress).dump(2) + "\n";
}

FrameworkDocument parse_framework(std::string_view text) {
  const json doc = parse_json(text);
  if (doc.is_object() && doc.value("format", "") == "convexify.expansion") {
    return framework_from(member(doc, "framework", "document"));
  }
  return framework_from(doc);
}

FrameworkDocument read_framework(const std::filesystem::path& path) {
  return parse_framework(read_text(path));
}

std::string expansion_result_to_json(const ExpansionProblem& problem, const ExpansionResult& r,
                                     const ToleranceProfile& tol) {
  const Framework& f = problem.framework;
  json doc = header("convexify.expansion");
  doc["tolerances"] = tolerances_json(tol);
  doc["pin"] = {{"vertex", problem.pin.vertex}, {"edge", problem.pin.edge}};
  doc["bound"] = problem.bound;
  if (const auto* ex = std::get_if<Expansion>(&r)) {
    const auto rep = validate_expansion(f, ex->v, ex->eps, tol, problem.pin, problem.bound,
                                        problem.strut_weights);
    doc["branch"] = "Expansion";
    doc["eps"] = ex->eps;
    doc["velocities"] = points_json(ex->v);
    doc["validation"] = {{"max_bar_residual", rep.max_bar_residual},
                         {"min_strut_slack", rep.min_strut_slack},
                         {"pin_residual", rep.pin_residual},
                         {"max_component", rep.max_component},
                         {"pass", rep.pass}};
    doc["framework"] = framework_body(f, nullptr);
  } else {
    const auto& bl = std::get<Blocked>(r);
    const auto rep = validate_certificate(f, bl.certificate, tol, true);
    doc["branch"] = "Blocked";
    doc["eps_star"] = bl.eps_star;
    doc["certificate"] = {{"omega", vector_json(bl.certificate.omega)},
                          {"t", vector_json(bl.certificate.t)}};
    json v = {{"min_t", rep.min_t},
              {"norm", rep.norm},
              {"max_load", rep.max_load},
              {"pass", rep.pass}};
    if (rep.dichotomy_checked) v["dichotomy"] = to_string(rep.dichotomy);
    doc["validation"] = std::move(v);
    doc["framework"] = framework_body(f, &bl.certificate);
  }
  return doc.dump(2) + "\n";
}

std::string lift_to_json(const PlanarEmbedding& e, const Lift& lift, const LiftReport& report) {
  json doc = header("convexify.lift");
  doc["vertices"] = points_json(e.vertices);
  json edges = json::array();
  for (const auto& ed : e.edges) edges.push_back({{"i", ed.i}, {"j", ed.j}, {"stress", ed.stress}});
  doc["edges"] = std::move(edges);
  doc["faces"] = e.faces;
  doc["outer_face"] = e.outer_face;
  json faces = json::array();
  for (const auto& a : lift.faces) {
    faces.push_back({{"gx", a.gx}, {"gy", a.gy}, {"offset", a.offset}});
  }
  doc["lift"] = std::move(faces);
  doc["verification"] = {{"max_continuity", report.max_continuity},
                         {"max_jump", report.max_jump},
                         {"outer_value", report.outer_value},
                         {"violations", report.violations},
                         {"pass", report.pass}};
  return doc.dump(2) + "\n";
}

std::string trajectory_report_to_json(const TrajectoryReport& r) {
  json doc = header("convexify.trajectory_report");
  doc["max_length_drift"] = r.max_length_drift;
  doc["worst_dominance"] = r.worst_dominance;
  doc["lengths_ok"] = r.lengths_ok;
  doc["dominance_ok"] = r.dominance_ok;
  doc["simple_ok"] = r.simple_ok;
  doc["convex_ok"] = r.convex_ok;
  doc["violations"] = r.violations;
  doc["pass"] = r.pass;
  return doc.dump(2) + "\n";
}

void write_trajectory_csv(const Trajectory& traj, const FlowConfig& cfg, std::ostream& out) {
  traj.validate();
  const ToleranceProfile& t = cfg.tol;
  const std::size_t n = traj.snapshots.front().polygon.size();
  out << "# convexify.trajectory version=" << kFormatVersion << "\n";
  out << "# status=" << to_string(traj.status) << " success=" << (traj.success() ? 1 : 0)
      << " vertices=" << n << " snapshots=" << traj.snapshots.size() << "\n";
  out << "# message=" << traj.message << "\n";
  out << "# tolerances eq_tol=" << g17(t.eq_tol) << " strut_tol=" << g17(t.strut_tol)
      << " length_tol=" << g17(t.length_tol) << " geom_tol=" << g17(t.geom_tol) << "\n";
  out << "# config h0=" << g17(cfg.h0) << " min_step=" << g17(cfg.min_step)
      << " max_step=" << g17(cfg.max_step) << " max_steps=" << cfg.max_steps
      << " strut_rule=" << to_string(cfg.strut_rule) << " stop_mode=" << to_string(cfg.stop_mode)
      << " lp_blocked_tol=" << g17(cfg.lp_blocked_tol)
      << " projection_tol=" << g17(cfg.projection_tol)
      << " projection_sweeps=" << cfg.projection_sweeps << "\n";
  out << "# V,step,time,vertex,x,y\n";
  out << "# D,step,time,h,eps,energy,max_bar_residual,min_strut_slack,simple,locked,retries\n";
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const auto& snap = traj.snapshots[s];
    for (std::size_t i = 0; i < n; ++i) {
      out << "V," << s << ',' << g17(snap.time) << ',' << i << ',' << g17(snap.polygon[i].x) << ','
          << g17(snap.polygon[i].y) << '\n';
    }
  }
  for (const auto& d : traj.diagnostics) {
    out << "D," << d.step << ',' << g17(d.time) << ',' << g17(d.h) << ',' << g17(d.eps) << ','
        << g17(d.energy) << ',' << g17(d.max_bar_residual) << ',' << g17(d.min_strut_slack) << ','
        << (d.simple ? 1 : 0) << ',' << d.locked << ',' << d.retries << '\n';
  }
}

void emit_trajectory_csv(const Trajectory& traj, const FlowConfig& cfg,
                         const std::filesystem::path& path) {
  std::ostringstream ss;
  write_trajectory_csv(traj, cfg, ss);
  write_text(path, ss.str());
}

TrajectoryDocument parse_trajectory_csv(std::istream& in) {
  TrajectoryDocument doc;
  std::map<std::string, std::string> keys;
  std::size_t n = 0, count = 0;
  bool saw_magic = false;
  std::vector<std::vector<Point2>> positions;
  std::vector<double> times;
  std::size_t vrows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string_view body = std::string_view(line).substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.rfind("message=", 0) == 0) {
        doc.trajectory.message = std::string(body.substr(8));
        continue;
      }
      if (body.rfind("convexify.trajectory", 0) == 0) saw_magic = true;
      for (auto tok : split(body, ' ')) {
        const auto eq = tok.find('=');
        if (eq != std::string_view::npos) {
          keys[std::string(tok.substr(0, eq))] = std::string(tok.substr(eq + 1));
        }
      }
      if (saw_magic && positions.empty() && keys.count("snapshots") && keys.count("vertices")) {
        n = parse_size(keys["vertices"], "vertices");
        count = parse_size(keys["snapshots"], "snapshots");
        if (n < 3 || count == 0) structural(where, "header declares an empty trajectory");
        positions.assign(count, std::vector<Point2>(n));
      }
      continue;
    }
    if (!saw_magic) structural(where, "missing convexify.trajectory header");
    if (positions.empty()) structural(where, "rows before the vertices/snapshots header");
    const auto f = split(line, ',');
    if (f[0] == "V") {
      if (f.size() != 6) structural(where, "V row needs 6 fields");
      const std::size_t s = parse_size(f[1], where);
      const std::size_t i = parse_size(f[3], where);
      if (s >= count || i >= n) structural(where, "V row outside the declared grid");
      if (s * n + i != vrows) structural(where, "V rows out of order");
      ++vrows;
      const double time = parse_double(f[2], where);
      if (i == 0) {
        times.push_back(time);
      } else if (time != times.back()) {
        structural(where, "time differs within snapshot " + std::to_string(s));
      }
      positions[s][i] = {parse_double(f[4], where), parse_double(f[5], where)};
    } else if (f[0] == "D") {
      if (f.size() != 11) structural(where, "D row needs 11 fields");
      StepDiagnostics d;
      d.step = parse_size(f[1], where);
      d.time = parse_double(f[2], where);
      d.h = parse_double(f[3], where);
      d.eps = parse_double(f[4], where);
      d.energy = parse_double(f[5], where);
      d.max_bar_residual = parse_double(f[6], where);
      d.min_strut_slack = parse_double(f[7], where);
      d.simple = parse_size(f[8], where) != 0;
      d.locked = parse_size(f[9], where);
      d.retries = parse_size(f[10], where);
      doc.trajectory.diagnostics.push_back(d);
    } else {
      structural(where, "unknown row kind \"" + std::string(f[0]) + "\"");
    }
  }
  if (!saw_magic) structural("document", "missing convexify.trajectory header");
  if (keys.count("version") && keys["version"] != std::to_string(kFormatVersion)) {
    structural("version", "unsupported version " + keys["version"]);
  }
  if (vrows != count * n) structural("document", "vertex grid is incomplete");
  for (std::size_t k = 0; k < count; ++k) {
    doc.trajectory.snapshots.push_back({times[k], Polygon(std::move(positions[k]))});
  }
  if (doc.trajectory.diagnostics.size() != count) {
    structural("document", "expected one D row per snapshot");
  }
  auto num = [&](const char* key, double fallback) {
    const auto it = keys.find(key);
    return it == keys.end() ? fallback : parse_double(it->second, key);
  };
  doc.tol.eq_tol = num("eq_tol", doc.tol.eq_tol);
  doc.tol.strut_tol = num("strut_tol", doc.tol.strut_tol);
  doc.tol.length_tol = num("length_tol", doc.tol.length_tol);
  doc.tol.geom_tol = num("geom_tol", doc.tol.geom_tol);
  FlowConfig& c = doc.config;
  c.tol = doc.tol;
  c.h0 = num("h0", c.h0);
  c.min_step = num("min_step", c.min_step);
  c.max_step = num("max_step", c.max_step);
  c.lp_blocked_tol = num("lp_blocked_tol", c.lp_blocked_tol);
  c.projection_tol = num("projection_tol", c.projection_tol);
  if (keys.count("max_steps")) c.max_steps = parse_size(keys["max_steps"], "max_steps");
  if (keys.count("projection_sweeps")) {
    c.projection_sweeps = parse_size(keys["projection_sweeps"], "projection_sweeps");
  }
  if (keys.count("strut_rule")) c.strut_rule = parse_strut_rule(keys["strut_rule"]);
  if (keys.count("stop_mode")) c.stop_mode = parse_stop_mode(keys["stop_mode"]);
  if (!keys.count("status")) structural("document", "missing status");
  doc.trajectory.status = parse_status(keys["status"]);
  doc.trajectory.validate();
  return doc;
}

TrajectoryDocument read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string() + " for reading");
  return parse_trajectory_csv(in);
}

Viewport viewport_for(const Polygon& p, double margin) {
  double x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
  for (const auto& q : p.vertices()) {
    x0 = std::min(x0, q.x);
    x1 = std::max(x1, q.x);
    y0 = std::min(y0, q.y);
    y1 = std::max(y1, q.y);
  }
  const double pad = margin * std::max(x1 - x0, y1 - y0);
  return {x0 - pad, y0 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad};
}

std::string polygon_svg(const Polygon& p, const Viewport& view) {
  // SVG's y axis points down; flip so the drawing keeps the math orientation.
  const double size = std::max(view.width, view.height);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << g17(view.min_x) << ' '
     << g17(-(view.min_y + view.height)) << ' ' << g17(view.width) << ' ' << g17(view.height)
     << "\" width=\"800\" height=\"" << static_cast<long>(800.0 * view.height / view.width)
     << "\">\n";
  os << "  <polygon fill=\"#dde6f3\" stroke=\"#1f3b66\" stroke-width=\"" << g17(0.004 * size)
     << "\" stroke-linejoin=\"round\" points=\"";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << (i ? " " : "") << g17(p[i].x) << ',' << g17(-p[i].y);
  }
  os << "\"/>\n";
  for (const auto& q : p.vertices()) {
    os << "  <circle cx=\"" << g17(q.x) << "\" cy=\"" << g17(-q.y) << "\" r=\"" << g17(0.006 * size)
       << "\" fill=\"#b03a2e\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

Polygon polygon_at_time(const Trajectory& traj, double time) {
  const auto& s = traj.snapshots;
  if (s.empty()) throw InputError("trajectory has no snapshots");
  if (time <= s.front().time) return s.front().polygon;
  if (time >= s.back().time) return s.back().polygon;
  const auto hi = std::upper_bound(s.begin(), s.end(), time,
                                   [](double t, const Snapshot& snap) { return t < snap.time; });
  const auto lo = hi - 1;
  const double u = (time - lo->time) / (hi->time - lo->time);
  std::vector<Point2> pts(lo->polygon.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = (1.0 - u) * lo->polygon[i] + u * hi->polygon[i];
  }
  return Polygon(std::move(pts));
}

std::vector<std::filesystem::path> emit_svg_frames(const Trajectory& traj,
                                                   const std::filesystem::path& dir,
                                                   std::size_t frame_count) {
  traj.validate();
  if (frame_count == 0) throw InputError("frame_count must be positive");
  std::filesystem::create_directories(dir);
  const Viewport view = viewport_for(traj.final_polygon());
  const double t0 = traj.snapshots.front().time;
  const double t1 = traj.snapshots.back().time;
  std::vector<std::filesystem::path> out;
  for (std::size_t k = 0; k < frame_count; ++k) {
    const double u = frame_count == 1 ? 0.0 : static_cast<double>(k) / (frame_count - 1);
    const double time = k + 1 == frame_count && frame_count > 1 ? t1 : t0 + u * (t1 - t0);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.svg", k);
    out.push_back(dir / name);
    write_text(out.back(), polygon_svg(polygon_at_time(traj, time), view));
  }
  return out;
}

}  // namespace convexify::io
