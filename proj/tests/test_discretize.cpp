#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "surfrec/discretize.hpp"

using namespace surfrec;

namespace {

// Fill density constant for the reference disk run (h = 0.1, seed 0),
// measured once and frozen: c = pi / (count * h^2).
constexpr double kFillDensityConstant = 1.2224;
constexpr std::size_t kFrozenDiskCount = 257;

std::vector<double> consecutive_arc_gaps(const ReconstructedDomain& dom,
                                         const std::vector<BoundaryNode>& nodes) {
  const PeriodicSpline& s = dom.spline();
  std::vector<double> gaps;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t0 = nodes[i].parameter;
    double t1 = nodes[(i + 1) % nodes.size()].parameter;
    if (t1 <= t0) t1 += s.period();
    gaps.push_back(s.arc_length(t0, t1));
  }
  return gaps;
}

}  // namespace

TEST_SUITE_BEGIN("discretize");

TEST_CASE("spacing ramp hits its three anchor values") {
  const SpacingProfile profile{0.01, 0.05, {{1.0, 2.0}}, 0.4};
  CHECK(spacing_at(profile, {1.0, 2.0}) == doctest::Approx(0.01));
  CHECK(spacing_at(profile, {1.0, 2.5}) == doctest::Approx(0.05));  // beyond the ramp
  CHECK(spacing_at(profile, {1.0, 2.2}) == doctest::Approx(0.03));  // halfway up
  CHECK(spacing_at(SpacingProfile{0.01, 0.05, {}, 0.4}, {7.0, 7.0}) == doctest::Approx(0.05));
}

TEST_CASE("resampling a unit circle at 2pi/32 gives 32 +- 1 uniform nodes") {
  const ReconstructedDomain dom = ReconstructedDomain::from_points(oracles::circle(1.0, 64));
  const double h = 2.0 * std::numbers::pi / 32.0;
  const SpacingProfile profile{h, h, {}, 1.0};
  const std::vector<BoundaryNode> nodes = resample_boundary(dom, profile, NodeKind::Outer);
  CHECK(std::abs(static_cast<int>(nodes.size()) - 32) <= 1);

  for (const double gap : consecutive_arc_gaps(dom, nodes)) {
    CHECK(gap / h >= 0.75);
    CHECK(gap / h <= 1.25);
  }
}

TEST_CASE("node count tracks curve length over spacing") {
  const ReconstructedDomain dom = ReconstructedDomain::from_points(oracles::ellipse(2.0, 1.0, 96));
  const double length = dom.spline().total_length();
  for (const double h : {0.05, 0.11, 0.23}) {
    const SpacingProfile profile{h, h, {}, 1.0};
    const std::vector<BoundaryNode> nodes = resample_boundary(dom, profile, NodeKind::Outer);
    CHECK(std::abs(static_cast<double>(nodes.size()) - std::round(length / h)) <= 1.0);
  }
}

TEST_CASE("resampled nodes sit on the curve with unit outward normals") {
  const ReconstructedDomain dom = ReconstructedDomain::from_points(oracles::star(96));
  const SpacingProfile profile{0.05, 0.05, {}, 1.0};
  for (const BoundaryNode& n : resample_boundary(dom, profile, NodeKind::Dendrite)) {
    const double t = dom.nearest_parameter(n.position);
    CHECK(distance(n.position, dom.spline().eval(t)) < 1e-9);
    CHECK(n.normal.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(n.kind == NodeKind::Dendrite);
  }
}

TEST_CASE("graded profile refines the boundary near focus points") {
  const ReconstructedDomain dom = ReconstructedDomain::from_points(oracles::circle(1.0, 96));
  SpacingProfile profile{0.02, 0.1, {{1.0, 0.0}}, 0.8};
  const std::vector<BoundaryNode> nodes = resample_boundary(dom, profile, NodeKind::Outer);
  const std::vector<double> gaps = consecutive_arc_gaps(dom, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double h = spacing_at(profile, nodes[i].position);
    CHECK(gaps[i] / h >= 0.75);
    CHECK(gaps[i] / h <= 1.25);
  }
}

TEST_CASE("a curve shorter than three spacings is refused") {
  const ReconstructedDomain dom = ReconstructedDomain::from_points(oracles::circle(0.05, 16));
  const SpacingProfile profile{0.2, 0.2, {}, 1.0};
  CHECK_THROWS_WITH_AS(resample_boundary(dom, profile, NodeKind::Outer),
                       doctest::Contains("CurveTooShort"), Error);
}

TEST_CASE("disk fill lands inside the frozen density band") {
  const ReconstructedDomain disk = ReconstructedDomain::from_points(oracles::circle(1.0, 96));
  const double h = 0.1;
  const SpacingProfile profile{h, h, {}, 1.0};
  const std::vector<BoundaryNode> boundary = resample_boundary(disk, profile, NodeKind::Outer);
  const std::vector<Point2> interior = fill_interior(disk, nullptr, boundary, {}, profile, {}, 0);

  const double predicted = std::numbers::pi / (kFillDensityConstant * h * h);
  CHECK(static_cast<double>(interior.size()) >= 0.7 * predicted);
  CHECK(static_cast<double>(interior.size()) <= 1.3 * predicted);
  if (kFrozenDiskCount > 0) CHECK(interior.size() == kFrozenDiskCount);
}

TEST_CASE("fill respects containment and the separation floor") {
  const ReconstructedDomain outer = ReconstructedDomain::from_points(oracles::circle(1.0, 64));
  const ReconstructedDomain inner = ReconstructedDomain::from_points(oracles::circle(0.3, 32));
  SpacingProfile profile{0.04, 0.12, oracles::circle(0.3, 32), 0.4};
  const FillParams params;

  const std::vector<BoundaryNode> outer_nodes = resample_boundary(outer, profile, NodeKind::Outer);
  const std::vector<BoundaryNode> inner_nodes = resample_boundary(inner, profile, NodeKind::Dendrite);
  const std::vector<Point2> interior =
      fill_interior(outer, &inner, outer_nodes, inner_nodes, profile, params, 0);

  for (const Point2& p : interior) {
    CHECK(outer.contains(p));
    CHECK_FALSE(inner.contains(p));
  }

  // Pairwise separation over boundary + interior together.
  std::vector<Point2> all;
  for (const auto& n : outer_nodes) all.push_back(n.position);
  for (const auto& n : inner_nodes) all.push_back(n.position);
  all.insert(all.end(), interior.begin(), interior.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double hi = spacing_at(profile, all[i]);
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double floor = params.separation_floor * std::min(hi, spacing_at(profile, all[j]));
      CHECK(distance(all[i], all[j]) >= floor);
    }
  }
}

TEST_CASE("no coverage holes far from the boundaries") {
  const ReconstructedDomain disk = ReconstructedDomain::from_points(oracles::circle(1.0, 64));
  const double h = 0.08;
  const SpacingProfile profile{h, h, {}, 1.0};
  const std::vector<BoundaryNode> boundary = resample_boundary(disk, profile, NodeKind::Outer);
  const std::vector<Point2> interior = fill_interior(disk, nullptr, boundary, {}, profile, {}, 0);

  std::vector<Point2> all = interior;
  for (const auto& n : boundary) all.push_back(n.position);

  Rng rng(71);
  std::size_t tested = 0;
  for (int rep = 0; rep < 4000 && tested < 1000; ++rep) {
    const Point2 q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (q.norm() > 1.0 - h) continue;  // stay h away from the boundary
    ++tested;
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point2& p : all) nearest = std::min(nearest, distance(q, p));
    CHECK(nearest <= 1.5 * h);
  }
  CHECK(tested == 1000);
}

TEST_CASE("fill is deterministic for a fixed seed") {
  const ReconstructedDomain disk = ReconstructedDomain::from_points(oracles::circle(1.0, 48));
  const SpacingProfile profile{0.09, 0.09, {}, 1.0};
  const std::vector<BoundaryNode> boundary = resample_boundary(disk, profile, NodeKind::Outer);
  const std::vector<Point2> a = fill_interior(disk, nullptr, boundary, {}, profile, {}, 1234);
  const std::vector<Point2> b = fill_interior(disk, nullptr, boundary, {}, profile, {}, 1234);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
}

TEST_CASE("an annulus thinner than the spacing is empty") {
  const ReconstructedDomain outer = ReconstructedDomain::from_points(oracles::circle(1.0, 96));
  const ReconstructedDomain inner = ReconstructedDomain::from_points(oracles::circle(0.97, 96));
  const SpacingProfile profile{0.1, 0.1, {}, 1.0};
  const std::vector<BoundaryNode> outer_nodes = resample_boundary(outer, profile, NodeKind::Outer);
  const std::vector<BoundaryNode> inner_nodes = resample_boundary(inner, profile, NodeKind::Dendrite);
  CHECK_THROWS_WITH_AS(fill_interior(outer, &inner, outer_nodes, inner_nodes, profile, {}, 0),
                       doctest::Contains("RegionEmpty"), Error);
}

TEST_SUITE_END();
