#include "surfrec/ordering.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace surfrec {

std::vector<Point2> OrderedBoundary::ordered_points() const {
  std::vector<Point2> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) out[j] = points[sigma[j]];
  return out;
}

OrderedBoundary order_points(const std::vector<Point2>& points) {
  const std::size_t k = points.size();
  if (k < 3) fail(ErrorCode::TooFewPoints, "ordering needs at least 3 points");
  const NeighborIndex index(points);

  OrderedBoundary ob;
  ob.points = points;
  ob.sigma.assign(k, 0);
  ob.sigma_inv.assign(k, 0);

  std::vector<char> placed(k, 0);
  ob.sigma[0] = 0;
  ob.sigma_inv[0] = 0;
  placed[0] = 1;

  for (std::size_t j = 0; j + 1 < k; ++j) {
    // A candidate is rejected iff it already sits anywhere in the prefix,
    // not just in the most recent slots; ranks are probed in order so the
    // accepted point is the closest fresh one.
    std::size_t rank = 1;
    for (;;) {
      if (rank > k - 1)
        fail(ErrorCode::OrderingStalled,
             "no unplaced neighbor left after position " + std::to_string(j) +
                 "; the sample is too sparse to follow the curve");
      const std::size_t cand = index.nth_nearest(ob.sigma[j], rank);
      if (!placed[cand]) {
        ob.sigma[j + 1] = cand;
        ob.sigma_inv[cand] = j + 1;
        placed[cand] = 1;
        break;
      }
      ++rank;
    }
  }
  return ob;
}

DensityReport validate_density(const OrderedBoundary& ordered) {
  const std::size_t k = ordered.size();
  const NeighborIndex index(ordered.points);

  DensityReport report;
  report.ordered_polyline_self_intersects = polyline_self_intersects(ordered.ordered_points());

  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t pos = ordered.sigma_inv[i];
    const std::size_t prev = ordered.sigma[(pos + k - 1) % k];
    const std::size_t next = ordered.sigma[(pos + 1) % k];

    const std::size_t global_nearest = index.nth_nearest(i, 1);
    if (global_nearest != prev && global_nearest != next)
      report.condition3_violations.push_back(i);

    if (k > 3) {
      // First of the top-3 ranks that is not order-adjacent; at most two
      // ranks can be excluded, so rank 3 always yields one.
      double nearest_non_adjacent = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t rank = 1; rank <= 3; ++rank) {
        const std::size_t cand = index.nth_nearest(i, rank);
        if (cand != prev && cand != next) {
          nearest_non_adjacent = distance(ordered.points[i], ordered.points[cand]);
          break;
        }
      }
      const double adj = std::max(distance(ordered.points[i], ordered.points[prev]),
                                  distance(ordered.points[i], ordered.points[next]));
      min_ratio = std::min(min_ratio, nearest_non_adjacent / adj);
    }
  }
  report.min_neighbor_gap_ratio = min_ratio;
  return report;
}

}  // namespace surfrec
