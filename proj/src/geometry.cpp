#include "surfrec/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace surfrec {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::OrderingStalled: return "OrderingStalled";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AmbiguousOrientation: return "AmbiguousOrientation";
    case ErrorCode::CurveTooShort: return "CurveTooShort";
    case ErrorCode::RegionEmpty: return "RegionEmpty";
    case ErrorCode::NotEnoughNodes: return "NotEnoughNodes";
    case ErrorCode::SingularStencil: return "SingularStencil";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::BoundaryCollision: return "BoundaryCollision";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

NeighborIndex::NeighborIndex(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.empty()) fail(ErrorCode::EmptyInput, "cannot build an index over zero points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!points_[i].finite())
      fail(ErrorCode::InvalidArgument, "non-finite coordinate at point " + std::to_string(i));
  }

  nodes_.reserve(points_.size());
  std::vector<std::size_t> ids(points_.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  root_ = build(ids, 0);

  // Nearest-other-point distance below the coincidence threshold means the
  // set is unusable for ordering; report the offending pair.
  if (points_.size() > 1) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const std::size_t j = nth_nearest(i, 1);
      if (distance(points_[i], points_[j]) < kDuplicateDistance)
        fail(ErrorCode::DuplicatePoints,
             "points " + std::to_string(std::min(i, j)) + " and " + std::to_string(std::max(i, j)) +
                 " coincide");
    }
  }
}

int NeighborIndex::build(std::span<std::size_t> ids, int depth) {
  if (ids.empty()) return -1;
  const int axis = depth % 2;
  const std::size_t mid = ids.size() / 2;
  std::nth_element(ids.begin(), ids.begin() + mid, ids.end(),
                   [&](std::size_t a, std::size_t b) {
                     const double ca = axis == 0 ? points_[a].x : points_[a].y;
                     const double cb = axis == 0 ? points_[b].x : points_[b].y;
                     return ca < cb || (ca == cb && a < b);
                   });
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back({ids[mid], axis, -1, -1});
  const int left = build(ids.subspan(0, mid), depth + 1);
  const int right = build(ids.subspan(mid + 1), depth + 1);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

namespace {

// Max-heap order on (distance^2, index): the worst candidate sits on top.
bool heap_less(const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) {
  return a.first < b.first || (a.first == b.first && a.second < b.second);
}

}  // namespace

void NeighborIndex::search(int node, const Point2& query, std::size_t m,
                           std::vector<std::pair<double, std::size_t>>& heap) const {
  if (node < 0) return;
  const Node& nd = nodes_[node];
  const Point2& p = points_[nd.point];
  const double d2 = (p - query).norm2();
  const std::pair<double, std::size_t> cand{d2, nd.point};
  if (heap.size() < m) {
    heap.push_back(cand);
    std::push_heap(heap.begin(), heap.end(), heap_less);
  } else if (heap_less(cand, heap.front())) {
    std::pop_heap(heap.begin(), heap.end(), heap_less);
    heap.back() = cand;
    std::push_heap(heap.begin(), heap.end(), heap_less);
  }

  const double delta = nd.axis == 0 ? query.x - p.x : query.y - p.y;
  const int near = delta < 0 ? nd.left : nd.right;
  const int far = delta < 0 ? nd.right : nd.left;
  search(near, query, m, heap);
  if (heap.size() < m || delta * delta <= heap.front().first) search(far, query, m, heap);
}

std::vector<std::size_t> NeighborIndex::nearest(const Point2& query, std::size_t m) const {
  m = std::min(m, points_.size());
  std::vector<std::pair<double, std::size_t>> heap;
  heap.reserve(m + 1);
  search(root_, query, m, heap);
  std::sort(heap.begin(), heap.end(), heap_less);
  std::vector<std::size_t> out(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) out[i] = heap[i].second;
  return out;
}

std::size_t NeighborIndex::nth_nearest(std::size_t query_index, std::size_t n) const {
  if (query_index >= points_.size())
    fail(ErrorCode::InvalidArgument, "query index " + std::to_string(query_index) + " out of range");
  if (n < 1 || n > points_.size() - 1)
    fail(ErrorCode::RankOutOfRange,
         "rank " + std::to_string(n) + " not in [1, " + std::to_string(points_.size() - 1) + "]");
  // The query point itself is always rank 0 of this list (distance 0 is
  // unique once duplicates are rejected), so rank n among others is slot n.
  const auto ids = nearest(points_[query_index], n + 1);
  return ids[n] == query_index ? ids[n - 1] : ids[n];
}

double polyline_signed_area(std::span<const Point2> loop) {
  if (loop.size() < 3) fail(ErrorCode::TooFewPoints, "signed area needs at least 3 vertices");
  double twice = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point2& a = loop[i];
    const Point2& b = loop[(i + 1) % loop.size()];
    twice += a.cross(b);
  }
  return 0.5 * twice;
}

namespace {

int orient_sign(const Point2& a, const Point2& b, const Point2& c) {
  const double v = (b - a).cross(c - a);
  return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = orient_sign(a, b, c);
  const int o2 = orient_sign(a, b, d);
  const int o3 = orient_sign(c, d, a);
  const int o4 = orient_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool polyline_self_intersects(std::span<const Point2> loop) {
  const std::size_t n = loop.size();
  if (n < 3) fail(ErrorCode::TooFewPoints, "self-intersection test needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip edge pairs sharing a vertex, including the closing edge.
      if (j == i || j == (i + 1) % n || (j + 1) % n == i) continue;
      if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n])) return true;
    }
  }
  return false;
}

bool point_in_polygon(std::span<const Point2> loop, const Point2& p) {
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = loop[i];
    const Point2& b = loop[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace surfrec
