#pragma once

#include <cstddef>
#include <vector>

#include "surfrec/geometry.hpp"
#include "surfrec/ordering.hpp"

namespace surfrec {

/// Closed C2 piecewise-cubic curve interpolating an ordered point loop.
///
/// Knots are cumulative chord length, so the parameter is close to arc
/// length and the speed stays near 1. Segment j covers [knot j, knot j+1]
/// and stores coefficients in the local variable u = t - knot_j:
/// coordinate(u) = a + b u + c u^2 + d u^3.
class PeriodicSpline {
 public:
  struct Coeffs {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    double value(double u) const { return a + u * (b + u * (c + u * d)); }
    double d1(double u) const { return b + u * (2.0 * c + 3.0 * d * u); }
    double d2(double u) const { return 2.0 * c + 6.0 * d * u; }
  };

  /// Fits the periodic interpolant through the loop in the given order.
  /// Throws TooFewPoints (< 3) and SingularSystem (repeated points, a
  /// degenerate zero-area loop such as collinear input, or a failed solve).
  static PeriodicSpline fit(const std::vector<Point2>& ordered_loop);

  /// Convenience overload applying the recovered permutation first.
  static PeriodicSpline fit(const OrderedBoundary& ordered);

  /// Curve position; t is wrapped into [0, period).
  Point2 eval(double t) const;

  /// Exact first or second derivative of the piecewise cubic at t (wrapped).
  Point2 derivative(double t, int order) const;

  /// Integral of the speed over [t0, t1] by adaptive quadrature,
  /// relative accuracy 1e-8. Requires t0 <= t1 <= t0 + period.
  double arc_length(double t0, double t1) const;

  double total_length() const;

  /// Inverse of arc_length(0, t): the parameter at which the arc length
  /// from knot 0 equals s (s wrapped into [0, total length)).
  double parameter_at_arc_length(double s) const;

  double period() const { return knots_.back(); }
  std::size_t segment_count() const { return control_.size(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<Point2>& control_points() const { return control_; }
  const std::vector<Coeffs>& coeffs_x() const { return x_; }
  const std::vector<Coeffs>& coeffs_y() const { return y_; }

  /// Rebuilds a spline from raw pieces (deserialization); validates sizes.
  static PeriodicSpline from_parts(std::vector<double> knots, std::vector<Coeffs> x,
                                   std::vector<Coeffs> y);

 private:
  PeriodicSpline() = default;

  /// Wraps t into [0, period) and returns the segment index it falls in.
  std::size_t locate(double& t) const;

  std::vector<double> knots_;   // size k+1, knots_[0] == 0
  std::vector<Point2> control_; // size k
  std::vector<Coeffs> x_, y_;   // size k
  std::vector<double> cum_length_; // arc length from knot 0 to each knot
};

}  // namespace surfrec
