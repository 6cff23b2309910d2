#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "surfrec/errors.hpp"

namespace surfrec {

/// 2D position / displacement in dimensionless domain units.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  Point2 operator/(double s) const { return {x / s, y / s}; }
  Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double cross(const Point2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  /// Counter-clockwise quarter turn.
  Point2 rot90() const { return {-y, x}; }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

/// Coincidence threshold: closer pairs cannot be told apart by the ordering
/// walk and are rejected at ingestion.
inline constexpr double kDuplicateDistance = 1e-12;

/// Static k-d tree over an immutable point list. Queries are pure and safe to
/// run concurrently; rebuilding is the only way to change the point set.
class NeighborIndex {
 public:
  /// Throws EmptyInput, InvalidArgument (non-finite coordinate) or
  /// DuplicatePoints (some pair closer than kDuplicateDistance).
  explicit NeighborIndex(std::vector<Point2> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point2>& points() const { return points_; }
  const Point2& point(std::size_t i) const { return points_[i]; }

  /// Indices of the m points nearest to `query` (the query point itself is a
  /// regular member if it belongs to the set). Sorted by (distance, index);
  /// ties always resolve to the lower index.
  std::vector<std::size_t> nearest(const Point2& query, std::size_t m) const;

  std::size_t nearest_one(const Point2& query) const { return nearest(query, 1)[0]; }

  /// Index of the n-th closest point to point `query_index`, self excluded;
  /// n = 1 is the nearest other point. Throws RankOutOfRange.
  std::size_t nth_nearest(std::size_t query_index, std::size_t n) const;

 private:
  struct Node {
    std::size_t point = 0;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::span<std::size_t> ids, int depth);
  void search(int node, const Point2& query, std::size_t m,
              std::vector<std::pair<double, std::size_t>>& heap) const;

  std::vector<Point2> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

inline NeighborIndex build_index(std::vector<Point2> points) {
  return NeighborIndex(std::move(points));
}

/// Shoelace area of a closed loop; positive for counter-clockwise traversal.
/// Throws TooFewPoints for fewer than 3 vertices.
double polyline_signed_area(std::span<const Point2> loop);

/// True iff any two non-adjacent edges of the closed loop touch or cross.
/// Throws TooFewPoints for fewer than 3 vertices.
bool polyline_self_intersects(std::span<const Point2> loop);

/// Closed-segment intersection test, touching endpoints included.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Even-odd ray-cast test against the polygon with vertices `loop`. Used when
/// constructing a domain to vet interior probe candidates; containment queries
/// go through ReconstructedDomain::contains instead.
bool point_in_polygon(std::span<const Point2> loop, const Point2& p);

}  // namespace surfrec
