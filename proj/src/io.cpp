#include "surfrec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace surfrec {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  return fields;
}

double parse_real(const std::string& s, const std::filesystem::path& path, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(ErrorCode::IoFailure,
         path.string() + ":" + std::to_string(line_no) + ": cannot parse real '" + s + "'");
  return value;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::IoFailure, "write to " + path.string() + " failed");
}

}  // namespace

std::vector<Point2> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoFailure, path.string() + " is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "x" || header[1] != "y")
    fail(ErrorCode::IoFailure, path.string() + ": expected header 'x,y'");

  std::vector<Point2> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2)
      fail(ErrorCode::IoFailure, path.string() + ":" + std::to_string(line_no) + ": expected x,y");
    points.push_back({parse_real(fields[0], path, line_no), parse_real(fields[1], path, line_no)});
  }
  return points;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<Point2>& points) {
  std::ofstream out = open_for_write(path);
  out << "x,y\n";
  for (const Point2& p : points) out << format_real(p.x) << "," << format_real(p.y) << "\n";
  finish_write(out, path);
}

void write_ordered_csv(const std::filesystem::path& path, const OrderedBoundary& ordered) {
  std::ofstream out = open_for_write(path);
  out << "x,y,order\n";
  for (std::size_t i = 0; i < ordered.size(); ++i)
    out << format_real(ordered.points[i].x) << "," << format_real(ordered.points[i].y) << ","
        << ordered.sigma_inv[i] << "\n";
  finish_write(out, path);
}

void write_nodes_csv(const std::filesystem::path& path, const std::vector<BoundaryNode>& boundary,
                     const std::vector<Point2>& interior) {
  std::ofstream out = open_for_write(path);
  out << "x,y,kind\n";
  for (const BoundaryNode& n : boundary)
    out << format_real(n.position.x) << "," << format_real(n.position.y) << ","
        << node_kind_name(n.kind) << "\n";
  for (const Point2& p : interior)
    out << format_real(p.x) << "," << format_real(p.y) << ",interior\n";
  finish_write(out, path);
}

ScatteredField read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoFailure, path.string() + " is empty");
  const auto header = split_csv_line(line);
  if (header.size() != 4 || header[0] != "x" || header[1] != "y" || header[2] != "T" ||
      header[3] != "kind")
    fail(ErrorCode::IoFailure, path.string() + ": expected header 'x,y,T,kind'");

  ScatteredField field;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      fail(ErrorCode::IoFailure, path.string() + ":" + std::to_string(line_no) + ": expected x,y,T,kind");
    field.nodes.push_back({parse_real(fields[0], path, line_no), parse_real(fields[1], path, line_no)});
    field.values.push_back(parse_real(fields[2], path, line_no));
    field.kind.push_back(node_kind_from_name(fields[3]));
  }
  return field;
}

nlohmann::json density_report_to_json(const DensityReport& report) {
  nlohmann::json j;
  j["condition3_violations"] = report.condition3_violations;
  if (std::isfinite(report.min_neighbor_gap_ratio))
    j["min_neighbor_gap_ratio"] = report.min_neighbor_gap_ratio;
  else
    j["min_neighbor_gap_ratio"] = nullptr;
  j["ordered_polyline_self_intersects"] = report.ordered_polyline_self_intersects;
  return j;
}

nlohmann::json spline_to_json(const PeriodicSpline& spline) {
  nlohmann::json j;
  j["knots"] = spline.knots();
  auto pack = [](const std::vector<PeriodicSpline::Coeffs>& cs) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cs) rows.push_back({c.a, c.b, c.c, c.d});
    return rows;
  };
  j["coeffs_x"] = pack(spline.coeffs_x());
  j["coeffs_y"] = pack(spline.coeffs_y());
  return j;
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& known,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(ErrorCode::InvalidArgument, "unknown config key '" + scope + key + "'");
  }
}

}  // namespace

SimConfig sim_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "config root must be a JSON object");
  reject_unknown_keys(j, {"R_m", "R_d", "v_d", "dt", "N_t", "spacing", "fill", "idw", "rbffd",
                          "seed", "snapshot_every", "output_dir", "symmetrize_initial",
                          "heat_substeps"},
                      "");

  SimConfig cfg;
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::remove_reference_t<decltype(slot)>>();
  };
  get("R_m", cfg.R_m);
  get("R_d", cfg.R_d);
  get("v_d", cfg.v_d);
  get("dt", cfg.dt);
  get("N_t", cfg.N_t);
  get("seed", cfg.seed);
  get("snapshot_every", cfg.snapshot_every);
  get("output_dir", cfg.output_dir);
  get("symmetrize_initial", cfg.symmetrize_initial);
  get("heat_substeps", cfg.heat_substeps);

  if (j.contains("spacing")) {
    const auto& s = j.at("spacing");
    reject_unknown_keys(s, {"h_min", "h_max", "transition_radius"}, "spacing.");
    if (s.contains("h_min")) cfg.spacing.h_min = s.at("h_min").get<double>();
    if (s.contains("h_max")) cfg.spacing.h_max = s.at("h_max").get<double>();
    if (s.contains("transition_radius"))
      cfg.spacing.transition_radius = s.at("transition_radius").get<double>();
  }
  if (j.contains("fill")) {
    const auto& f = j.at("fill");
    reject_unknown_keys(f, {"accept_factor", "separation_floor", "candidates_per_node"}, "fill.");
    if (f.contains("accept_factor")) cfg.fill.accept_factor = f.at("accept_factor").get<double>();
    if (f.contains("separation_floor"))
      cfg.fill.separation_floor = f.at("separation_floor").get<double>();
    if (f.contains("candidates_per_node"))
      cfg.fill.candidates_per_node = f.at("candidates_per_node").get<int>();
  }
  if (j.contains("idw")) {
    const auto& w = j.at("idw");
    reject_unknown_keys(w, {"k_sources", "power"}, "idw.");
    if (w.contains("k_sources")) cfg.idw.k_sources = w.at("k_sources").get<std::size_t>();
    if (w.contains("power")) cfg.idw.power = w.at("power").get<double>();
  }
  if (j.contains("rbffd")) {
    const auto& r = j.at("rbffd");
    reject_unknown_keys(r, {"stencil_size", "condition_limit"}, "rbffd.");
    if (r.contains("stencil_size")) cfg.rbffd.stencil_size = r.at("stencil_size").get<std::size_t>();
    if (r.contains("condition_limit"))
      cfg.rbffd.condition_limit = r.at("condition_limit").get<double>();
  }
  return cfg;
}

SimConfig read_sim_config(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoFailure, path.string() + ": " + e.what());
  }
  return sim_config_from_json(j);
}

PeriodicSpline spline_from_json(const nlohmann::json& j) {
  auto unpack = [](const nlohmann::json& rows) {
    std::vector<PeriodicSpline::Coeffs> cs;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 4)
        fail(ErrorCode::IoFailure, "spline coefficient rows must be [a,b,c,d]");
      cs.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                    row[3].get<double>()});
    }
    return cs;
  };
  if (!j.contains("knots") || !j.contains("coeffs_x") || !j.contains("coeffs_y"))
    fail(ErrorCode::IoFailure, "spline JSON needs knots, coeffs_x and coeffs_y");
  return PeriodicSpline::from_parts(j["knots"].get<std::vector<double>>(), unpack(j["coeffs_x"]),
                                    unpack(j["coeffs_y"]));
}

}  // namespace surfrec
