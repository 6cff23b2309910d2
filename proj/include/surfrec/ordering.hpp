#pragma once

#include <vector>

#include "surfrec/geometry.hpp"

namespace surfrec {

/// Curve-adjacency order recovered from an unordered boundary sample.
/// sigma[j] is the original index of the j-th point along the curve;
/// sigma_inv[i] is the position of original point i. The two arrays are
/// mutual inverses and the walk always starts at input point 0.
struct OrderedBoundary {
  std::vector<Point2> points;
  std::vector<std::size_t> sigma;
  std::vector<std::size_t> sigma_inv;

  std::size_t size() const { return points.size(); }
  const Point2& at_position(std::size_t pos) const { return points[sigma[pos]]; }

  /// Points rearranged into curve order.
  std::vector<Point2> ordered_points() const;
};

/// Nearest-neighbor walk over the sample: each step appends the closest point
/// not yet placed, probing increasing neighbor ranks. Requires the sample to
/// cover a single densely discretized closed curve.
/// Throws TooFewPoints (k < 3) and OrderingStalled (candidates exhausted).
OrderedBoundary order_points(const std::vector<Point2>& points);

/// Checkable residue of the sampling-density assumptions.
struct DensityReport {
  /// Point indices whose global nearest neighbor is not order-adjacent.
  std::vector<std::size_t> condition3_violations;
  /// min over points of d(nearest non-adjacent) / max(d(prev), d(next));
  /// >= 1 indicates the spacing assumption plausibly holds. +inf when every
  /// point is adjacent to every other (k == 3).
  double min_neighbor_gap_ratio = 0.0;
  bool ordered_polyline_self_intersects = false;
};

/// Always returns; this is a diagnostic, not a gate.
DensityReport validate_density(const OrderedBoundary& ordered);

}  // namespace surfrec
