#include "surfrec/domain.hpp"

#include <algorithm>
#include <cmath>

namespace surfrec {

namespace {

constexpr double kOrientationEps = 1e-12;
constexpr double kCurvatureEps = 1e-12;
constexpr int kMaxLocalizeIterations = 200;

// Nearest-point parameter localized by the nearest defining point: the
// global minimum of the distance lies in the knot span around that point
// as long as the sample satisfies the density assumptions.
double project_param(const PeriodicSpline& sp, const NeighborIndex& idx, const Point2& x) {
  const std::size_t k = sp.segment_count();
  const std::size_t p = idx.nearest(x, 1)[0];
  const auto& knots = sp.knots();
  const double period = sp.period();

  const double mid = knots[p];
  const double lo = p == 0 ? knots[k - 1] - period : knots[p - 1];
  const double hi = knots[p + 1];

  auto g = [&](double t) { return (x - sp.eval(t)).dot(sp.derivative(t, 1)); };
  auto f2 = [&](double t) { return (x - sp.eval(t)).norm2(); };

  const double tol = 1e-12 * period;

  double best_t = mid;
  double best_f = f2(mid);
  auto consider = [&](double t) {
    const double f = f2(t);
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  };
  consider(lo);
  consider(hi);

  auto bisect = [&](double a, double b, double ga) {
    for (int iter = 0; iter < kMaxLocalizeIterations && (b - a) > tol; ++iter) {
      const double m = 0.5 * (a + b);
      const double gm = g(m);
      if (gm == 0.0) return m;
      if ((gm > 0.0) == (ga > 0.0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };

  const double g_lo = g(lo);
  const double g_mid = g(mid);
  const double g_hi = g(hi);

  const bool left = g_lo * g_mid < 0.0;
  const bool right = g_mid * g_hi < 0.0;
  if (left) consider(bisect(lo, mid, g_lo));
  if (right) consider(bisect(mid, hi, g_mid));
  if (g_mid == 0.0) consider(mid);

  if (!left && !right) {
    // No stationarity bracket; descend on the distance itself.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c1 = b - gr * (b - a);
    double c2 = a + gr * (b - a);
    double f1 = f2(c1);
    double fc2 = f2(c2);
    for (int iter = 0; iter < kMaxLocalizeIterations && (b - a) > tol; ++iter) {
      if (f1 < fc2) {
        b = c2;
        c2 = c1;
        fc2 = f1;
        c1 = b - gr * (b - a);
        f1 = f2(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = fc2;
        c2 = a + gr * (b - a);
        fc2 = f2(c2);
      }
    }
    consider(0.5 * (a + b));
  }

  double t = std::fmod(best_t, period);
  if (t < 0.0) t += period;
  return t;
}

int orientation_from(const PeriodicSpline& sp, const NeighborIndex& idx, const Point2& probe) {
  const double t = project_param(sp, idx, probe);
  const double s = (probe - sp.eval(t)).dot(sp.derivative(t, 2));
  if (std::abs(s) < kOrientationEps)
    fail(ErrorCode::AmbiguousOrientation,
         "curvature scalar product vanishes at the probe; probe too close to the boundary "
         "or curve locally flat");
  return s > 0.0 ? -1 : 1;
}

}  // namespace

int orientation_constant(const PeriodicSpline& spline, const Point2& interior_probe) {
  const NeighborIndex idx(spline.control_points());
  return orientation_from(spline, idx, interior_probe);
}

ReconstructedDomain ReconstructedDomain::build(PeriodicSpline spline,
                                               std::optional<Point2> interior_probe) {
  const std::vector<Point2> control = spline.control_points();
  NeighborIndex idx(control);
  ReconstructedDomain dom(std::move(spline), std::move(idx));
  dom.traversal_sign_ = polyline_signed_area(control) > 0.0 ? 1 : -1;

  if (interior_probe) {
    if (!point_in_polygon(control, *interior_probe))
      fail(ErrorCode::InvalidArgument, "supplied interior probe is not inside the control polygon");
    dom.orientation_c_ = orientation_from(dom.spline_, dom.index_, *interior_probe);
    dom.probe_ = *interior_probe;
    return dom;
  }

  Point2 centroid{0.0, 0.0};
  for (const Point2& p : control) centroid += p;
  centroid = centroid / static_cast<double>(control.size());

  // Centroid first; when it fails (non-convex loops can put it outside or on
  // the curve) retry from the centroid's curve projection nudged inward.
  std::vector<Point2> candidates{centroid};
  {
    const double t = project_param(dom.spline_, dom.index_, centroid);
    const auto& knots = dom.spline_.knots();
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t j = static_cast<std::size_t>(it - knots.begin());
    j = j == 0 ? 0 : j - 1;
    if (j >= dom.spline_.segment_count()) j = dom.spline_.segment_count() - 1;
    const double local = knots[j + 1] - knots[j];
    const Point2 inward = dom.spline_.eval(t) - 0.5 * local * dom.rotated_outward(t);
    candidates.push_back((centroid + inward) / 2.0);
    candidates.push_back(inward);
  }

  for (const Point2& cand : candidates) {
    if (!point_in_polygon(control, cand)) continue;
    try {
      dom.orientation_c_ = orientation_from(dom.spline_, dom.index_, cand);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AmbiguousOrientation) continue;
      throw;
    }
    dom.probe_ = cand;
    return dom;
  }
  fail(ErrorCode::AmbiguousOrientation, "no usable interior probe candidate found");
}

ReconstructedDomain ReconstructedDomain::from_points(const std::vector<Point2>& unordered_points) {
  return build(PeriodicSpline::fit(order_points(unordered_points)));
}

double ReconstructedDomain::nearest_parameter(const Point2& x) const {
  return project_param(spline_, index_, x);
}

double ReconstructedDomain::distance_to_curve(const Point2& x) const {
  return distance(x, spline_.eval(nearest_parameter(x)));
}

Point2 ReconstructedDomain::rotated_outward(double t) const {
  const Point2 tangent = spline_.derivative(t, 1);
  const Point2 unit = tangent / tangent.norm();
  return unit.rot90() * static_cast<double>(-traversal_sign_);
}

Point2 ReconstructedDomain::outward_normal(double t) const {
  const Point2 rotated = rotated_outward(t);
  const Point2 curv = spline_.derivative(t, 2) * static_cast<double>(orientation_c_);
  const double mag = curv.norm();
  if (mag > kCurvatureEps && curv.dot(rotated) > 0.0) return curv / mag;
  return rotated;
}

bool ReconstructedDomain::contains(const Point2& x) const {
  const double t = nearest_parameter(x);
  const Point2 offset = x - spline_.eval(t);
  const Point2 rotated = rotated_outward(t);
  const Point2 curv = spline_.derivative(t, 2) * static_cast<double>(orientation_c_);
  const Point2 test_dir =
      (curv.norm() > kCurvatureEps && curv.dot(rotated) > 0.0) ? curv : rotated;
  return offset.dot(test_dir) < 0.0;
}

}  // namespace surfrec
