// Copyright 2026 The wolfsocp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file io.hpp
 * @brief JSON and CSV formats for problems, scenarios, configuration,
 * reports and trajectories.
 *
 * Doubles are written in shortest round-trip form, so reading a file back
 * reproduces every value bit for bit.
 */
#pragma once

#include "wolfsocp/bench.hpp"
#include "wolfsocp/gp_sensing.hpp"
#include "wolfsocp/planner.hpp"
#include "wolfsocp/quadrotor.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/socp.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

namespace wolfsocp {

using Json = nlohmann::json;

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

inline int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

// Rejects keys outside `allowed`, which catches misspelled options.
inline void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) throw FormatError(std::string("unknown key '") + key + "' in " + what);
  }
}

template <typename T>
void read_if(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  if constexpr (std::is_same_v<T, int>) {
    out = integer(j.at(key), key);
  } else {
    out = number(j.at(key), key);
  }
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Dense arrays

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

/// Row-major nested arrays.
inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Vector vector_from_json(const Json& j, const char* what = "vector") {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = io_detail::number(j[i], what);
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> fixed_from_json(const Json& j, const char* what) {
  const Vector v = vector_from_json(j, what);
  if (v.size() != N) throw FormatError(std::string(what) + " must have " + std::to_string(N) + " entries");
  return v;
}

inline Matrix matrix_from_json(const Json& j, const char* what = "matrix") {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw FormatError(std::string(what) + " rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = io_detail::number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Problems

inline Json to_json(const PrimalSocp& p) {
  Json blocks = Json::array();
  for (const ConeBlock& b : p.blocks) {
    blocks.push_back({{"B", to_json(b.B)}, {"b", to_json(b.b)}, {"c", to_json(b.c)}, {"d", b.d}});
  }
  return {{"n", p.n()}, {"m", p.m()}, {"L", p.num_cones()}, {"p_hat", to_json(p.p_hat)}, {"blocks", std::move(blocks)}};
}

inline Json to_json(const DualSocp& d) {
  return {{"U", to_json(d.U)}, {"p", to_json(d.p)}};
}

/// Problem file: the primal object with the cone cap and the derived dual
/// added alongside.
inline Json problem_document(const PrimalSocp& primal, double lambda_max) {
  Json j = to_json(primal);
  j["lambda_max"] = lambda_max;
  j["dual"] = to_json(transform_to_dual(primal, lambda_max));
  return j;
}

struct ProblemFile {
  PrimalSocp primal;
  double lambda_max = kDefaultLambdaMax;
};

/// Reads a problem object. The size fields n, m, L and a stored dual are
/// optional; when present they must agree with the blocks.
inline ProblemFile problem_from_json(const Json& j) {
  using io_detail::field;
  io_detail::check_keys(j, {"n", "m", "L", "p_hat", "blocks", "lambda_max", "dual"}, "problem");
  ProblemFile f;
  PrimalSocp& p = f.primal;
  p.p_hat = vector_from_json(field(j, "p_hat"), "p_hat");
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) throw FormatError("'blocks' must be an array");
  for (const Json& b : blocks) {
    io_detail::check_keys(b, {"B", "b", "c", "d"}, "cone block");
    ConeBlock blk;
    blk.B = matrix_from_json(field(b, "B"), "B");
    blk.b = vector_from_json(field(b, "b"), "b");
    blk.c = vector_from_json(field(b, "c"), "c");
    blk.d = io_detail::number(field(b, "d"), "d");
    p.blocks.push_back(std::move(blk));
  }
  try {
    p.validate();
  } catch (const DimensionError& e) {
    throw FormatError(e.what());
  }
  auto check_size = [&](const char* key, int actual) {
    if (j.contains(key) && io_detail::integer(j.at(key), key) != actual)
      throw FormatError(std::string("'") + key + "' does not match the blocks (" + std::to_string(actual) + ")");
  };
  check_size("n", p.n());
  check_size("m", p.m());
  check_size("L", p.num_cones());
  io_detail::read_if(j, "lambda_max", f.lambda_max);
  if (!(f.lambda_max > 0.0)) throw FormatError("lambda_max must be positive");
  if (j.contains("dual")) {
    const Json& d = j.at("dual");
    io_detail::check_keys(d, {"U", "p"}, "dual");
    const DualSocp derived = transform_to_dual(p, f.lambda_max);
    const Matrix U = matrix_from_json(field(d, "U"), "U");
    const Vector pv = vector_from_json(field(d, "p"), "p");
    if (U.rows() != derived.U.rows() || U.cols() != derived.U.cols() || pv.size() != derived.p.size() ||
        U != derived.U || pv != derived.p)
      throw FormatError("stored dual does not match the primal problem");
  }
  return f;
}

inline PrimalSocp primal_from_json(const Json& j) { return problem_from_json(j).primal; }

// ---------------------------------------------------------------------------
// Reports and dual points

inline Json to_json(const SolveReport& r) {
  return {{"fail", r.fail}, {"outer", r.outer_iters}, {"inner", r.inner_iters}, {"delta", r.final_delta},
          {"seconds", r.wall_time}};
}

inline SolveReport report_from_json(const Json& j) {
  io_detail::check_keys(j, {"fail", "outer", "inner", "delta", "seconds"}, "solve report");
  SolveReport r;
  const Json& fail = io_detail::field(j, "fail");
  if (!fail.is_boolean()) throw FormatError("'fail' must be a boolean");
  r.fail = fail.get<bool>();
  r.outer_iters = io_detail::integer(io_detail::field(j, "outer"), "outer");
  r.inner_iters = io_detail::integer(io_detail::field(j, "inner"), "inner");
  r.final_delta = io_detail::number(io_detail::field(j, "delta"), "delta");
  r.wall_time = io_detail::number(io_detail::field(j, "seconds"), "seconds");
  return r;
}

// ---------------------------------------------------------------------------
// Obstacles

inline Json to_json(const Obstacle& o) {
  struct Visitor {
    Json operator()(const Ceiling& c) const { return {{"type", "ceiling"}, {"height", c.height}}; }
    Json operator()(const HalfSpace& h) const {
      return {{"type", "half_space"}, {"normal", to_json(Vector(h.normal))}, {"offset", h.offset}};
    }
    Json operator()(const HalfWall& w) const {
      return {{"type", "half_wall"},
              {"origin", to_json(Vector(w.origin))},
              {"normal", to_json(Vector(w.normal))},
              {"extent", to_json(Vector(w.extent))},
              {"thickness", w.thickness}};
    }
    Json operator()(const Hill& h) const {
      return {{"type", "hill"}, {"center", to_json(Vector(h.center))}, {"peak", h.peak}, {"width", h.width},
              {"base", h.base}};
    }
    Json operator()(const Cylinder& c) const {
      return {{"type", "cylinder"}, {"point", to_json(Vector(c.point))}, {"axis", to_json(Vector(c.axis))},
              {"radius", c.radius}};
    }
    Json operator()(const Circle2D& c) const {
      return {{"type", "circle2d"}, {"center", to_json(Vector(c.center))}, {"radius", c.radius}};
    }
    Json operator()(const Triangle2D& t) const {
      return {{"type", "triangle2d"}, {"a", to_json(Vector(t.a))}, {"b", to_json(Vector(t.b))},
              {"c", to_json(Vector(t.c))}};
    }
  };
  return std::visit(Visitor{}, o);
}

/// Omitted fields keep their defaults, except `type`.
inline Obstacle obstacle_from_json(const Json& j) {
  using io_detail::check_keys;
  using io_detail::read_if;
  if (!j.is_object()) throw FormatError("scenario must be a JSON object");
  const Json& tj = io_detail::field(j, "type");
  if (!tj.is_string()) throw FormatError("'type' must be a string");
  const std::string type = tj.get<std::string>();
  auto vec3 = [&](const char* key, Point3& out) {
    if (j.contains(key)) out = fixed_from_json<3>(j.at(key), key);
  };
  auto vec2 = [&](const char* key, Eigen::Vector2d& out) {
    if (j.contains(key)) out = fixed_from_json<2>(j.at(key), key);
  };
  if (type == "ceiling") {
    check_keys(j, {"type", "name", "height"}, "ceiling");
    Ceiling c;
    c.height = io_detail::number(io_detail::field(j, "height"), "height");
    return c;
  }
  if (type == "half_space") {
    check_keys(j, {"type", "name", "normal", "offset"}, "half_space");
    HalfSpace h;
    vec3("normal", h.normal);
    read_if(j, "offset", h.offset);
    return h;
  }
  if (type == "half_wall") {
    check_keys(j, {"type", "name", "origin", "normal", "extent", "thickness"}, "half_wall");
    HalfWall w;
    vec3("origin", w.origin);
    vec3("normal", w.normal);
    vec3("extent", w.extent);
    read_if(j, "thickness", w.thickness);
    if (!(w.thickness > 0.0)) throw FormatError("half_wall thickness must be positive");
    return w;
  }
  if (type == "hill") {
    check_keys(j, {"type", "name", "center", "peak", "width", "base"}, "hill");
    Hill h;
    vec2("center", h.center);
    read_if(j, "peak", h.peak);
    read_if(j, "width", h.width);
    read_if(j, "base", h.base);
    if (!(h.width > 0.0)) throw FormatError("hill width must be positive");
    return h;
  }
  if (type == "cylinder") {
    check_keys(j, {"type", "name", "point", "axis", "radius"}, "cylinder");
    Cylinder c;
    vec3("point", c.point);
    vec3("axis", c.axis);
    read_if(j, "radius", c.radius);
    if (!(c.axis.norm() > 0.0)) throw FormatError("cylinder axis must be nonzero");
    return c;
  }
  if (type == "circle2d") {
    check_keys(j, {"type", "name", "center", "radius"}, "circle2d");
    Circle2D c;
    vec2("center", c.center);
    read_if(j, "radius", c.radius);
    return c;
  }
  if (type == "triangle2d") {
    check_keys(j, {"type", "name", "a", "b", "c"}, "triangle2d");
    Triangle2D t;
    vec2("a", t.a);
    vec2("b", t.b);
    vec2("c", t.c);
    return t;
  }
  throw FormatError("unknown obstacle type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Configuration

inline Json to_json(const QuadParams& q) {
  return {{"gravity", q.gravity}, {"mass", q.mass}, {"thrust_gain", q.thrust_gain},
          {"tau", to_json(Vector(q.tau))}};
}

inline QuadParams quad_params_from_json(const Json& j, QuadParams q = {}) {
  io_detail::check_keys(j, {"gravity", "mass", "thrust_gain", "tau"}, "quad parameters");
  io_detail::read_if(j, "gravity", q.gravity);
  io_detail::read_if(j, "mass", q.mass);
  io_detail::read_if(j, "thrust_gain", q.thrust_gain);
  if (j.contains("tau")) q.tau = fixed_from_json<3>(j.at("tau"), "tau");
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return q;
}

inline Json to_json(const GridAxis& g) { return {{"half_width", g.half_width}, {"spacing", g.spacing}}; }

inline GridAxis grid_axis_from_json(const Json& j, GridAxis g) {
  io_detail::check_keys(j, {"half_width", "spacing"}, "grid");
  io_detail::read_if(j, "half_width", g.half_width);
  io_detail::read_if(j, "spacing", g.spacing);
  return g;
}

inline Json to_json(const PlannerConfig& c) {
  return {{"start", to_json(Vector(c.start))},
          {"goal", to_json(Vector(c.goal))},
          {"eps", c.eps},
          {"stop_radius", c.stop_radius},
          {"horizon", c.horizon},
          {"lambda_max", c.lambda_max},
          {"max_socp_iters", c.max_socp_iters},
          {"precision", c.precision},
          {"dt", c.dt},
          {"weights", {{"velocity", c.weights.velocity}, {"attitude", c.weights.attitude}}},
          {"max_steps", c.max_steps},
          {"ridge", c.ridge},
          {"grids", {{"coarse", to_json(c.grids.coarse)}, {"refine", to_json(c.grids.refine)},
                     {"boundary", to_json(c.grids.boundary)}}}};
}

/// Mission configuration file: planner settings plus an optional "quad"
/// object. Omitted keys keep their defaults.
struct MissionConfig {
  PlannerConfig planner;
  QuadParams quad;
};

inline Json to_json(const MissionConfig& c) {
  Json j = to_json(c.planner);
  j["quad"] = to_json(c.quad);
  return j;
}

inline MissionConfig mission_config_from_json(const Json& j) {
  using io_detail::read_if;
  io_detail::check_keys(j,
                        {"start", "goal", "eps", "stop_radius", "horizon", "lambda_max", "max_socp_iters",
                         "precision", "dt", "weights", "max_steps", "ridge", "grids", "quad"},
                        "config");
  MissionConfig out;
  PlannerConfig& c = out.planner;
  if (j.contains("start")) c.start = fixed_from_json<kStateDim>(j.at("start"), "start");
  if (j.contains("goal")) c.goal = fixed_from_json<kStateDim>(j.at("goal"), "goal");
  read_if(j, "eps", c.eps);
  read_if(j, "stop_radius", c.stop_radius);
  read_if(j, "horizon", c.horizon);
  read_if(j, "lambda_max", c.lambda_max);
  read_if(j, "max_socp_iters", c.max_socp_iters);
  read_if(j, "precision", c.precision);
  read_if(j, "dt", c.dt);
  read_if(j, "max_steps", c.max_steps);
  read_if(j, "ridge", c.ridge);
  if (j.contains("weights")) {
    const Json& w = j.at("weights");
    io_detail::check_keys(w, {"velocity", "attitude"}, "weights");
    read_if(w, "velocity", c.weights.velocity);
    read_if(w, "attitude", c.weights.attitude);
  }
  if (j.contains("grids")) {
    const Json& g = j.at("grids");
    io_detail::check_keys(g, {"coarse", "refine", "boundary"}, "grids");
    if (g.contains("coarse")) c.grids.coarse = grid_axis_from_json(g.at("coarse"), c.grids.coarse);
    if (g.contains("refine")) c.grids.refine = grid_axis_from_json(g.at("refine"), c.grids.refine);
    if (g.contains("boundary")) c.grids.boundary = grid_axis_from_json(g.at("boundary"), c.grids.boundary);
  }
  if (j.contains("quad")) out.quad = quad_params_from_json(j.at("quad"));
  try {
    c.validate();
  } catch (const std::logic_error& e) {
    throw FormatError(e.what());
  }
  return out;
}

inline SyntheticSpec synthetic_spec_from_json(const Json& j) {
  io_detail::check_keys(j, {"n", "L", "seed"}, "synthetic spec");
  SyntheticSpec s;
  io_detail::read_if(j, "n", s.n);
  io_detail::read_if(j, "L", s.L);
  if (j.contains("seed")) {
    const Json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
      throw FormatError("'seed' must be a non-negative integer");
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// CSV

/// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("invalid number '" + std::string(s) + "'");
  return x;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string trajectory_csv_header() {
  std::string h = "t";
  for (int i = 1; i <= kStateDim; ++i) h += ",x" + std::to_string(i);
  for (int i = 1; i <= kControlDim; ++i) h += ",u" + std::to_string(i);
  return h + ",delta,outer_iters,sense_s,opt_s";
}

/// One row per step: the state planned from and the control applied. With
/// `zero_timings` the timing columns are written as 0.
inline std::string trajectory_csv(const Trajectory& traj, bool zero_timings = false) {
  std::string out = trajectory_csv_header() + "\n";
  for (const StepRecord& r : traj.steps) {
    out += std::to_string(r.t);
    for (int i = 0; i < kStateDim; ++i) out += "," + format_double(r.state(i));
    for (int i = 0; i < kControlDim; ++i) out += "," + format_double(r.control(i));
    out += "," + format_double(r.report.final_delta);
    out += "," + std::to_string(r.report.outer_iters);
    out += "," + format_double(zero_timings ? 0.0 : r.sense_s);
    out += "," + format_double(zero_timings ? 0.0 : r.opt_s);
    out += "\n";
  }
  return out;
}

/// Reads states, controls and the per-step solver summary. Dual solutions
/// are not part of the format.
inline Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trajectory_csv_header()) throw FormatError("unexpected trajectory header");
  Trajectory traj;
  const std::size_t ncols = 1 + kStateDim + kControlDim + 4;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    if (cols.size() != ncols) throw FormatError("line " + std::to_string(lineno) + ": expected " +
                                                std::to_string(ncols) + " columns");
    StepRecord r;
    r.t = static_cast<int>(parse_double(cols[0]));
    std::size_t k = 1;
    for (int i = 0; i < kStateDim; ++i) r.state(i) = parse_double(cols[k++]);
    for (int i = 0; i < kControlDim; ++i) r.control(i) = parse_double(cols[k++]);
    r.report.final_delta = parse_double(cols[k++]);
    r.report.outer_iters = static_cast<int>(parse_double(cols[k++]));
    r.sense_s = parse_double(cols[k++]);
    r.opt_s = parse_double(cols[k++]);
    r.report.fail = false;
    if (r.t != static_cast<int>(traj.steps.size()))
      throw FormatError("line " + std::to_string(lineno) + ": steps must be numbered 0, 1, 2, ...");
    traj.steps.push_back(std::move(r));
  }
  return traj;
}

inline std::string bench_csv(const BenchReport& report, bool zero_timings = false) {
  std::string out = "solver,precision,fail,seconds,outer_iters,inner_iters,delta,objective\n";
  for (const BenchRow& r : report.rows) {
    out += std::string(to_string(r.solver)) + "," + format_double(r.precision) + "," + (r.fail ? "1" : "0") + "," +
           format_double(zero_timings ? 0.0 : r.seconds) + "," + std::to_string(r.outer_iters) + "," +
           std::to_string(r.inner_iters) + "," + format_double(r.delta) + "," + format_double(r.objective) + "\n";
  }
  return out;
}

/// Boundary-grid samples with their labels.
inline std::string sensing_csv(const SensingResult& s) {
  std::string out = "x,y,z,label\n";
  for (Eigen::Index r = 0; r < s.Z.rows(); ++r) {
    out += format_double(s.Z(r, 0)) + "," + format_double(s.Z(r, 1)) + "," + format_double(s.Z(r, 2)) + "," +
           format_double(s.y(r)) + "\n";
  }
  return out;
}

}  // namespace wolfsocp
