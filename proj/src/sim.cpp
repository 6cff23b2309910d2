#include "surfrec/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <json.hpp>

namespace surfrec {

void SimConfig::validate() const {
  if (!(0.0 < R_d && R_d < R_m)) fail(ErrorCode::InvalidArgument, "need 0 < R_d < R_m");
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  if (N_t < 1) fail(ErrorCode::InvalidArgument, "N_t must be at least 1");
  if (!(v_d >= 0.0)) fail(ErrorCode::InvalidArgument, "v_d must be non-negative");
  if (snapshot_every < 1) fail(ErrorCode::InvalidArgument, "snapshot_every must be at least 1");
  if (heat_substeps < 0) fail(ErrorCode::InvalidArgument, "heat_substeps must be >= 0");
  if (!(spacing.h_min > 0.0 && spacing.h_max >= spacing.h_min && spacing.transition_radius > 0.0))
    fail(ErrorCode::InvalidArgument, "invalid spacing profile");
  if (idw.k_sources < 1) fail(ErrorCode::InvalidArgument, "idw.k_sources must be at least 1");
  if (rbffd.stencil_size < 6)
    fail(ErrorCode::InvalidArgument, "rbffd.stencil_size must be at least 6");
}

Point2 boundary_velocity(const Point2& x, const Point2& unit_normal, double v_d) {
  const double phi = std::atan2(x.y, x.x);
  const double c = std::cos(2.0 * phi);
  return unit_normal * (v_d * (1.0 / 20.0 + c * c));
}

std::vector<Point2> advance_boundary(const std::vector<BoundaryNode>& nodes, double dt, double v_d) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "advance_boundary needs dt > 0");
  std::vector<Point2> moved;
  moved.reserve(nodes.size());
  for (const BoundaryNode& n : nodes)
    moved.push_back(n.position + dt * boundary_velocity(n.position, n.normal, v_d));
  return moved;
}

namespace {

std::vector<Point2> circle_points(double radius, std::size_t count) {
  std::vector<Point2> pts(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    pts[j] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  return pts;
}

std::vector<Point2> positions_of(const std::vector<BoundaryNode>& nodes) {
  std::vector<Point2> pts(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) pts[i] = nodes[i].position;
  return pts;
}

ScatteredField assemble_field(const std::vector<BoundaryNode>& outer,
                              const std::vector<BoundaryNode>& dendrite,
                              const std::vector<Point2>& interior,
                              const std::vector<double>& interior_values) {
  ScatteredField f;
  f.nodes.reserve(outer.size() + dendrite.size() + interior.size());
  for (const BoundaryNode& n : outer) {
    f.nodes.push_back(n.position);
    f.kind.push_back(NodeKind::Outer);
    f.values.push_back(1.0);
  }
  for (const BoundaryNode& n : dendrite) {
    f.nodes.push_back(n.position);
    f.kind.push_back(NodeKind::Dendrite);
    f.values.push_back(0.0);
  }
  for (std::size_t i = 0; i < interior.size(); ++i) {
    f.nodes.push_back(interior[i]);
    f.kind.push_back(NodeKind::Interior);
    f.values.push_back(interior_values.empty() ? 0.0 : interior_values[i]);
  }
  return f;
}

void impose_boundary_values(ScatteredField& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.kind[i] == NodeKind::Outer) f.values[i] = 1.0;
    if (f.kind[i] == NodeKind::Dendrite) f.values[i] = 0.0;
  }
}

// Largest distance from any 90-degree-rotated dendrite node to the dendrite
// curve; zero for a perfectly four-fold symmetric boundary.
double symmetry_metric(const ReconstructedDomain& dom, const std::vector<BoundaryNode>& nodes) {
  double worst = 0.0;
  for (const BoundaryNode& n : nodes) {
    const Point2 rotated{-n.position.y, n.position.x};
    worst = std::max(worst, dom.distance_to_curve(rotated));
  }
  return worst;
}

SimStepStats collect_stats(int step, const ScatteredField& field,
                           const std::vector<BoundaryNode>& dendrite_nodes,
                           const ReconstructedDomain& dendrite_domain) {
  SimStepStats st;
  st.step = step;
  st.node_count = field.size();
  st.dendrite_node_count = dendrite_nodes.size();
  st.interior_node_count = 0;
  for (const NodeKind k : field.kind)
    if (k == NodeKind::Interior) ++st.interior_node_count;
  st.dendrite_area = std::abs(polyline_signed_area(positions_of(dendrite_nodes)));
  st.symmetry_metric = symmetry_metric(dendrite_domain, dendrite_nodes);
  st.temp_min = *std::min_element(field.values.begin(), field.values.end());
  st.temp_max = *std::max_element(field.values.begin(), field.values.end());
  return st;
}

void write_summary(const std::filesystem::path& path, const SimConfig& config,
                   const SimResult& result) {
  nlohmann::json j;
  j["steps"] = config.N_t;
  j["dt"] = config.dt;
  j["wall_seconds"] = result.wall_seconds;
  j["final_node_count"] = result.stats.back().node_count;
  j["snapshots"] = result.snapshot_paths;
  auto series = [&](auto getter) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SimStepStats& st : result.stats) arr.push_back(getter(st));
    return arr;
  };
  j["node_count"] = series([](const SimStepStats& s) { return s.node_count; });
  j["dendrite_node_count"] = series([](const SimStepStats& s) { return s.dendrite_node_count; });
  j["dendrite_area"] = series([](const SimStepStats& s) { return s.dendrite_area; });
  j["symmetry_metric"] = series([](const SimStepStats& s) { return s.symmetry_metric; });
  j["temp_min"] = series([](const SimStepStats& s) { return s.temp_min; });
  j["temp_max"] = series([](const SimStepStats& s) { return s.temp_max; });

  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out.flush()) fail(ErrorCode::IoFailure, "write to " + path.string() + " failed");
}

}  // namespace

void write_snapshot(const SimState& state, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << "x,y,T,kind\n";
  char buf[160];
  for (std::size_t i = 0; i < state.field.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s", state.field.nodes[i].x,
                  state.field.nodes[i].y, state.field.values[i],
                  node_kind_name(state.field.kind[i]));
    out << buf << "\n";
  }
  if (!out.flush()) fail(ErrorCode::IoFailure, "write to " + path.string() + " failed");
}

SimResult run_simulation(const SimConfig& config) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const std::filesystem::path out_dir(config.output_dir);

  // Static outer boundary, reconstructed and discretized once.
  const std::size_t outer_seed_count = std::max<std::size_t>(
      16, static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi * config.R_m /
                                                config.spacing.h_max)));
  ReconstructedDomain outer = ReconstructedDomain::from_points(circle_points(config.R_m, outer_seed_count));

  // Initial dendrite circle at the count the resampler would choose, nudged
  // to the nearest multiple of four when the initial boundary is symmetrized
  // so the node n -> n+1 jump at the first re-discretization stays small.
  std::size_t dendrite_seed_count = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi * config.R_d /
                                               config.spacing.h_min)));
  if (config.symmetrize_initial)
    dendrite_seed_count = std::max<std::size_t>(8, (dendrite_seed_count + 2) / 4 * 4);
  const std::vector<Point2> dendrite_seed = circle_points(config.R_d, dendrite_seed_count);
  ReconstructedDomain dendrite = ReconstructedDomain::from_points(dendrite_seed);

  SpacingProfile profile = config.spacing;
  profile.focus_points = dendrite_seed;

  const std::vector<BoundaryNode> outer_nodes = resample_boundary(outer, profile, NodeKind::Outer);

  std::vector<BoundaryNode> dendrite_nodes;
  if (config.symmetrize_initial) {
    // Initial nodes exactly at the uniform-angle seed positions.
    const auto& knots = dendrite.spline().knots();
    for (std::size_t j = 0; j < dendrite_seed.size(); ++j) {
      BoundaryNode n;
      n.position = dendrite_seed[j];
      n.parameter = knots[j];
      n.normal = dendrite.outward_normal(knots[j]);
      n.kind = NodeKind::Dendrite;
      dendrite_nodes.push_back(n);
    }
  } else {
    dendrite_nodes = resample_boundary(dendrite, profile, NodeKind::Dendrite);
  }

  profile.focus_points = positions_of(dendrite_nodes);
  std::vector<Point2> interior = fill_interior(outer, &dendrite, outer_nodes, dendrite_nodes,
                                               profile, config.fill, config.seed);

  ScatteredField field = assemble_field(outer_nodes, dendrite_nodes, interior, {});

  // Start from the steady profile of the initial annulus; a discontinuous
  // start (cold interior against the hot outer rim) would shock the explicit
  // stepping and let scattered stencils undershoot below zero.
  {
    const std::vector<double> rhs(field.size(), 0.0);
    std::vector<double> bc(field.size(), 0.0);
    for (std::size_t i = 0; i < field.size(); ++i)
      bc[i] = field.kind[i] == NodeKind::Outer ? 1.0 : 0.0;
    field = solve_poisson(field.nodes, field.kind, rhs, bc, config.rbffd);
    impose_boundary_values(field);
  }

  std::vector<StencilWeights> weights = build_laplacian_weights(field.nodes, field.kind, config.rbffd);

  const int substeps = config.heat_substeps > 0
                           ? config.heat_substeps
                           : std::max(1, static_cast<int>(std::ceil(
                                             config.dt / stable_heat_dt(config.spacing.h_min))));
  const double dt_sub = config.dt / substeps;
  if (dt_sub > stable_heat_dt(config.spacing.h_min))
    std::cerr << "warning: heat substep " << dt_sub << " exceeds the stability guard "
              << stable_heat_dt(config.spacing.h_min) << "; expect unstable temperatures\n";

  SimResult result;
  result.stats.push_back(collect_stats(0, field, dendrite_nodes, dendrite));

  auto snapshot = [&](int step) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%05d.csv", step);
    const std::filesystem::path path = out_dir / name;
    SimState state{step, step * config.dt, field, outer_nodes, dendrite_nodes};
    write_snapshot(state, path);
    result.snapshot_paths.push_back(path.string());
  };
  snapshot(0);

  for (int step = 1; step <= config.N_t; ++step) {
    // Temperature first, then growth; the moved boundary only affects the
    // field through the transfer below.
    for (int s = 0; s < substeps; ++s) field = heat_step(field, weights, dt_sub);

    const std::vector<Point2> moved = advance_boundary(dendrite_nodes, config.dt, config.v_d);

    dendrite = ReconstructedDomain::from_points(moved);

    profile.focus_points = moved;
    dendrite_nodes = resample_boundary(dendrite, profile, NodeKind::Dendrite);
    profile.focus_points = positions_of(dendrite_nodes);
    interior = fill_interior(outer, &dendrite, outer_nodes, dendrite_nodes, profile, config.fill,
                             config.seed);

    std::vector<Point2> new_nodes;
    new_nodes.reserve(outer_nodes.size() + dendrite_nodes.size() + interior.size());
    for (const BoundaryNode& n : outer_nodes) new_nodes.push_back(n.position);
    for (const BoundaryNode& n : dendrite_nodes) new_nodes.push_back(n.position);
    for (const Point2& p : interior) new_nodes.push_back(p);
    const std::vector<double> transferred =
        idw_transfer(field, new_nodes, config.idw.k_sources, config.idw.power);

    field = ScatteredField{};
    field.nodes = std::move(new_nodes);
    field.kind.assign(field.nodes.size(), NodeKind::Interior);
    for (std::size_t i = 0; i < outer_nodes.size(); ++i) field.kind[i] = NodeKind::Outer;
    for (std::size_t i = 0; i < dendrite_nodes.size(); ++i)
      field.kind[outer_nodes.size() + i] = NodeKind::Dendrite;
    field.values = transferred;
    impose_boundary_values(field);

    const std::vector<Point2> loop = positions_of(dendrite_nodes);
    if (polyline_self_intersects(loop))
      fail(ErrorCode::SelfIntersection,
           "dendrite boundary self-intersects at step " + std::to_string(step));
    for (const BoundaryNode& n : dendrite_nodes) {
      if (outer.distance_to_curve(n.position) < spacing_at(profile, n.position))
        fail(ErrorCode::BoundaryCollision,
             "dendrite within one spacing of the outer boundary at step " + std::to_string(step));
    }

    weights = build_laplacian_weights(field.nodes, field.kind, config.rbffd);

    result.stats.push_back(collect_stats(step, field, dendrite_nodes, dendrite));
    if (step % config.snapshot_every == 0 || step == config.N_t) snapshot(step);
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  write_summary(out_dir / "run_summary.json", config, result);
  return result;
}

}  // namespace surfrec
