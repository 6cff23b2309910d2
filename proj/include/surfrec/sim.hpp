#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "surfrec/discretize.hpp"
#include "surfrec/rbffd.hpp"

namespace surfrec {

struct IdwParams {
  std::size_t k_sources = 4;
  double power = 2.0;
};

/// Parameters of the dendrite-growth run. Field names match the JSON config
/// schema one to one.
struct SimConfig {
  double R_m = 1.0;   // static outer circle radius
  double R_d = 0.1;   // initial dendrite circle radius
  double v_d = 0.04;  // velocity scale
  double dt = 0.01;
  int N_t = 500;
  SpacingProfile spacing{0.022, 0.09, {}, 0.3};  // focus is set per step
  FillParams fill;
  IdwParams idw;
  RbffdParams rbffd;
  std::uint64_t seed = 0;
  int snapshot_every = 25;
  std::string output_dir = "out";
  bool symmetrize_initial = true;
  /// Heat substeps per time step; 0 derives the count from the explicit
  /// stability guard dt_sub <= 0.1 * h_min^2.
  int heat_substeps = 0;

  void validate() const;
};

/// Full simulation state after a completed step.
struct SimState {
  int step = 0;
  double time = 0.0;
  ScatteredField field;  // rows: outer boundary in curve order, dendrite
                         // boundary in curve order, interior in fill order
  std::vector<BoundaryNode> outer_nodes;
  std::vector<BoundaryNode> dendrite_nodes;
};

struct SimStepStats {
  int step = 0;
  std::size_t node_count = 0;
  std::size_t dendrite_node_count = 0;
  std::size_t interior_node_count = 0;
  double dendrite_area = 0.0;
  double symmetry_metric = 0.0;
  double temp_min = 0.0;
  double temp_max = 0.0;
};

struct SimResult {
  std::vector<std::string> snapshot_paths;
  std::vector<SimStepStats> stats;  // one entry per step, step 0 included
  double wall_seconds = 0.0;
};

/// Growth speed of a dendrite boundary node: v_d (1/20 + cos^2(2 phi)) along
/// the outward normal, phi the polar angle of x about the origin.
Point2 boundary_velocity(const Point2& x, const Point2& unit_normal, double v_d);

/// One explicit motion step for every node; positions only, normals are
/// recomputed by the following reconstruction.
std::vector<Point2> advance_boundary(const std::vector<BoundaryNode>& nodes, double dt, double v_d);

/// Runs the moving-boundary loop: heat step, advance the dendrite boundary,
/// reconstruct it from the moved points, re-discretize the annulus, transfer
/// the temperature onto the new nodes, check the curve stays simple, and
/// snapshot on cadence. Snapshots land in config.output_dir together with
/// run_summary.json.
/// Throws BoundaryCollision, SelfIntersection and anything the reconstruction
/// pipeline raises (notably OrderingStalled).
SimResult run_simulation(const SimConfig& config);

/// CSV dump of the state: header x,y,T,kind, 17 significant digits, rows in
/// field order. Throws IoFailure.
void write_snapshot(const SimState& state, const std::filesystem::path& path);

}  // namespace surfrec
