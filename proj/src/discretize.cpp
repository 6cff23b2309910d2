#include "surfrec/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "surfrec/linalg.hpp"

namespace surfrec {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Interior: return "interior";
    case NodeKind::Outer: return "outer";
    case NodeKind::Dendrite: return "dendrite";
  }
  return "unknown";
}

NodeKind node_kind_from_name(const std::string& name) {
  if (name == "interior") return NodeKind::Interior;
  if (name == "outer") return NodeKind::Outer;
  if (name == "dendrite") return NodeKind::Dendrite;
  fail(ErrorCode::InvalidArgument, "unknown node kind '" + name + "'");
}

namespace {

void validate_profile(const SpacingProfile& profile) {
  if (!(profile.h_min > 0.0 && profile.h_max >= profile.h_min && profile.transition_radius > 0.0))
    fail(ErrorCode::InvalidArgument, "spacing profile requires 0 < h_min <= h_max and a positive "
                                     "transition radius");
}

}  // namespace

double spacing_at(const SpacingProfile& profile, const Point2& x) {
  if (profile.focus_points.empty()) return profile.h_max;
  double d2 = std::numeric_limits<double>::infinity();
  for (const Point2& f : profile.focus_points) d2 = std::min(d2, (x - f).norm2());
  const double ratio = std::clamp(std::sqrt(d2) / profile.transition_radius, 0.0, 1.0);
  return profile.h_min + (profile.h_max - profile.h_min) * ratio;
}

std::vector<BoundaryNode> resample_boundary(const ReconstructedDomain& dom,
                                            const SpacingProfile& profile, NodeKind tag) {
  validate_profile(profile);
  const PeriodicSpline& sp = dom.spline();
  const double total = sp.total_length();
  if (total <= 3.0 * profile.h_min)
    fail(ErrorCode::CurveTooShort, "curve length " + std::to_string(total) +
                                       " cannot hold 3 nodes at spacing " +
                                       std::to_string(profile.h_min));

  // March provisional gaps at the local spacing, then scale every gap by one
  // common factor so the closure gap is a regular one. The factor is chosen
  // with or without the last marched node, whichever lands closer to 1.
  std::vector<double> arc_pos{0.0};
  double marched = 0.0;
  while (true) {
    const double h = spacing_at(profile, sp.eval(sp.parameter_at_arc_length(marched)));
    marched += h;
    if (marched >= total) break;
    arc_pos.push_back(marched);
  }
  double scale = total / marched;
  if (arc_pos.size() > 3) {
    const double scale_without_last = total / arc_pos.back();
    if (std::abs(scale_without_last - 1.0) < std::abs(scale - 1.0)) {
      arc_pos.pop_back();
      scale = scale_without_last;
    }
  }
  if (arc_pos.size() < 3)
    fail(ErrorCode::CurveTooShort, "fewer than 3 boundary nodes fit the curve at this spacing");

  std::vector<BoundaryNode> nodes;
  nodes.reserve(arc_pos.size());
  for (const double pos : arc_pos) {
    const double t = sp.parameter_at_arc_length(pos * scale);
    BoundaryNode node;
    node.parameter = t;
    node.position = sp.eval(t);
    node.normal = dom.outward_normal(t);
    node.kind = tag;
    nodes.push_back(node);
  }
  return nodes;
}

namespace {

// Uniform hash grid used for the separation queries of the fill; cell size
// is the largest spacing so a 3x3 block covers every rejection radius.
class HashGrid {
 public:
  explicit HashGrid(double cell) : cell_(cell) {}

  void insert(const Point2& p) {
    cells_[key(p)].push_back(p);
    count_++;
  }

  /// Smallest min(h(p), h(q)) scaled distance violation among stored points.
  bool too_close(const Point2& p, double h_p, double factor, const SpacingProfile& profile) const {
    const long cx = static_cast<long>(std::floor(p.x / cell_));
    const long cy = static_cast<long>(std::floor(p.y / cell_));
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        const auto it = cells_.find(pack(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (const Point2& q : it->second) {
          const double limit = factor * std::min(h_p, spacing_at(profile, q));
          if ((p - q).norm2() < limit * limit) return true;
        }
      }
    }
    return false;
  }

  std::size_t size() const { return count_; }

 private:
  static std::uint64_t pack(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
  }
  std::uint64_t key(const Point2& p) const {
    return pack(static_cast<long>(std::floor(p.x / cell_)), static_cast<long>(std::floor(p.y / cell_)));
  }

  double cell_;
  std::size_t count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Point2>> cells_;
};

}  // namespace

std::vector<Point2> fill_interior(const ReconstructedDomain& outer, const ReconstructedDomain* inner,
                                  const std::vector<BoundaryNode>& outer_nodes,
                                  const std::vector<BoundaryNode>& inner_nodes,
                                  const SpacingProfile& profile, const FillParams& params,
                                  std::uint64_t seed) {
  validate_profile(profile);
  if (outer_nodes.empty()) fail(ErrorCode::InvalidArgument, "outer boundary node list is empty");

  auto in_region = [&](const Point2& p) {
    if (!outer.contains(p)) return false;
    return inner == nullptr || !inner->contains(p);
  };

  HashGrid grid(profile.h_max);
  std::deque<Point2> queue;
  for (const BoundaryNode& n : outer_nodes) {
    grid.insert(n.position);
    queue.push_back(n.position);
  }
  for (const BoundaryNode& n : inner_nodes) {
    grid.insert(n.position);
    queue.push_back(n.position);
  }

  Rng rng(seed);
  std::vector<Point2> interior;
  while (!queue.empty()) {
    const Point2 seed_pt = queue.front();
    queue.pop_front();
    const double h = spacing_at(profile, seed_pt);
    const double base = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int c = 0; c < params.candidates_per_node; ++c) {
      const double angle = base + 2.0 * std::numbers::pi * c / params.candidates_per_node;
      const Point2 cand = seed_pt + Point2{h * std::cos(angle), h * std::sin(angle)};
      if (!in_region(cand)) continue;
      if (grid.too_close(cand, spacing_at(profile, cand), params.accept_factor, profile)) continue;
      grid.insert(cand);
      queue.push_back(cand);
      interior.push_back(cand);
    }
  }

  if (interior.empty())
    fail(ErrorCode::RegionEmpty, "no interior candidate survived; region thinner than the spacing");
  return interior;
}

}  // namespace surfrec
