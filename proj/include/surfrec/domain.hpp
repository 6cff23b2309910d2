#pragma once

#include <optional>

#include "surfrec/geometry.hpp"
#include "surfrec/spline.hpp"

namespace surfrec {

/// Global sign that makes the curvature scalar-product test classify the
/// given interior point as inside: c = -sgn(<probe - curve(t*), curve''(t*)>)
/// with t* the nearest parameter to the probe.
/// Throws AmbiguousOrientation when the product magnitude is below 1e-12
/// (probe on or too close to the curve, or a locally flat segment).
int orientation_constant(const PeriodicSpline& spline, const Point2& interior_probe);

/// A fitted closed curve packaged as a queryable domain: nearest-point
/// projection, inside/outside classification and outward normals.
///
/// Classification uses the curvature vector c * curve'' as the outward
/// direction wherever that vector agrees with the traversal-orientation
/// normal (rotated tangent); on concave arcs the curvature vector flips to
/// the inner side, so the rotated tangent takes over there. Both routes give
/// identical verdicts on convex curves.
class ReconstructedDomain {
 public:
  /// Packages a fitted spline. When no probe is supplied the control-point
  /// centroid is tried first, then a point nudged inward from the centroid's
  /// curve projection. Probe candidates are vetted with an even-odd test on
  /// the control polygon. Throws AmbiguousOrientation when no candidate
  /// qualifies.
  static ReconstructedDomain build(PeriodicSpline spline, std::optional<Point2> interior_probe = {});

  /// Full pipeline: recover order, fit the periodic spline, orient.
  static ReconstructedDomain from_points(const std::vector<Point2>& unordered_points);

  /// Parameter of the curve point nearest to x. The candidate bracket is the
  /// knot span around x's nearest defining point; the stationarity function
  /// g(t) = <x - curve(t), curve'(t)> is bisected on each half where it
  /// changes sign, with golden-section descent on the distance as fallback.
  double nearest_parameter(const Point2& x) const;

  /// True iff the scalar product of (x - nearest curve point) with the
  /// outward test direction is negative. An exact zero counts as outside.
  bool contains(const Point2& x) const;

  /// Unit outward normal at parameter t: c * curve''(t) normalized where the
  /// curvature vector is usable and orientation-consistent, otherwise the
  /// rotated unit tangent signed by the loop orientation.
  Point2 outward_normal(double t) const;

  /// Distance from x to the curve.
  double distance_to_curve(const Point2& x) const;

  int orientation() const { return orientation_c_; }
  const Point2& interior_probe() const { return probe_; }
  const PeriodicSpline& spline() const { return spline_; }
  const NeighborIndex& index() const { return index_; }
  /// +1 when the control loop runs counter-clockwise, -1 otherwise.
  int traversal_sign() const { return traversal_sign_; }

 private:
  ReconstructedDomain(PeriodicSpline spline, NeighborIndex index)
      : spline_(std::move(spline)), index_(std::move(index)) {}

  Point2 rotated_outward(double t) const;

  PeriodicSpline spline_;
  NeighborIndex index_;
  int orientation_c_ = -1;
  int traversal_sign_ = 1;
  Point2 probe_;
};

}  // namespace surfrec
