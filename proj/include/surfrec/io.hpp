#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "surfrec/discretize.hpp"
#include "surfrec/ordering.hpp"
#include "surfrec/rbffd.hpp"
#include "surfrec/sim.hpp"
#include "surfrec/spline.hpp"

namespace surfrec {

/// Reads a point list from CSV with header `x,y`. Throws IoFailure on
/// missing files, malformed headers or unparsable rows.
std::vector<Point2> read_points_csv(const std::filesystem::path& path);

/// Writes `x,y` CSV with 17 significant digits.
void write_points_csv(const std::filesystem::path& path, const std::vector<Point2>& points);

/// Writes `x,y,order` CSV; the order column is the position of each input
/// row along the recovered curve.
void write_ordered_csv(const std::filesystem::path& path, const OrderedBoundary& ordered);

/// Writes `x,y,kind` CSV for a discretization.
void write_nodes_csv(const std::filesystem::path& path, const std::vector<BoundaryNode>& boundary,
                     const std::vector<Point2>& interior);

/// Reads `x,y,T,kind` snapshot rows back into a field.
ScatteredField read_snapshot_csv(const std::filesystem::path& path);

nlohmann::json density_report_to_json(const DensityReport& report);

/// {knots, coeffs_x, coeffs_y} with one [a,b,c,d] row per segment.
nlohmann::json spline_to_json(const PeriodicSpline& spline);
PeriodicSpline spline_from_json(const nlohmann::json& j);

/// Simulation config from JSON mirroring SimConfig field names; every field
/// is optional and unknown keys are rejected (InvalidArgument).
SimConfig sim_config_from_json(const nlohmann::json& j);
SimConfig read_sim_config(const std::filesystem::path& path);

}  // namespace surfrec
