#pragma once

#include <cstdint>
#include <vector>

#include "surfrec/domain.hpp"

namespace surfrec {

enum class NodeKind { Interior, Outer, Dendrite };

const char* node_kind_name(NodeKind kind);
NodeKind node_kind_from_name(const std::string& name);

/// Target internodal distance: h_min at a focus point, ramping linearly to
/// h_max at transition_radius away from the nearest focus point. An empty
/// focus set means uniform h_max spacing.
struct SpacingProfile {
  double h_min = 0.02;
  double h_max = 0.08;
  std::vector<Point2> focus_points;
  double transition_radius = 0.3;
};

double spacing_at(const SpacingProfile& profile, const Point2& x);

struct BoundaryNode {
  Point2 position;
  Point2 normal;  // unit, outward
  NodeKind kind = NodeKind::Outer;
  double parameter = 0.0;  // curve parameter the node was placed at
};

/// Knobs of the interior fill; defaults reproduce the reference densities.
struct FillParams {
  double accept_factor = 0.85;    // candidate kept at >= accept_factor * h from others
  double separation_floor = 0.7;  // hard pairwise floor, asserted post-fill
  int candidates_per_node = 6;
};

/// Places nodes along the curve at the locally requested spacing, then
/// rescales all gaps by one common factor so the loop closes without a short
/// last edge. Gaps stay within [0.75, 1.25] of the local spacing.
/// Throws CurveTooShort when the curve cannot hold 3 nodes at h_min.
std::vector<BoundaryNode> resample_boundary(const ReconstructedDomain& dom,
                                            const SpacingProfile& profile, NodeKind tag);

/// Advancing-front fill of the region inside `outer` and outside `inner`
/// (pass nullptr for a simply connected region). Boundary nodes seed the
/// front and take part in all separation checks. Deterministic for a fixed
/// seed. Throws RegionEmpty when no interior candidate survives.
std::vector<Point2> fill_interior(const ReconstructedDomain& outer, const ReconstructedDomain* inner,
                                  const std::vector<BoundaryNode>& outer_nodes,
                                  const std::vector<BoundaryNode>& inner_nodes,
                                  const SpacingProfile& profile, const FillParams& params = {},
                                  std::uint64_t seed = 0);

/// Boundary and interior node sets of one region, in snapshot row order:
/// outer boundary in curve order, then inner boundary, then interior in
/// generation order.
struct Discretization {
  std::vector<BoundaryNode> boundary_nodes;
  std::vector<Point2> interior_nodes;
};

}  // namespace surfrec
