#include "surfrec/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfrec/linalg.hpp"

namespace surfrec {

namespace {

constexpr double kArcLengthRelTol = 1e-9;

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 28);
}

}  // namespace

PeriodicSpline PeriodicSpline::fit(const OrderedBoundary& ordered) {
  return fit(ordered.ordered_points());
}

PeriodicSpline PeriodicSpline::fit(const std::vector<Point2>& loop) {
  const std::size_t k = loop.size();
  if (k < 3) fail(ErrorCode::TooFewPoints, "periodic spline needs at least 3 points");
  for (std::size_t j = 0; j < k; ++j)
    if (!loop[j].finite())
      fail(ErrorCode::InvalidArgument, "non-finite coordinate at point " + std::to_string(j));

  std::vector<double> chord(k);
  for (std::size_t j = 0; j < k; ++j) {
    chord[j] = distance(loop[j], loop[(j + 1) % k]);
    if (chord[j] < 1e-12)
      fail(ErrorCode::SingularSystem, "repeated interpolation point at position " + std::to_string(j));
  }

  // A loop of (near) zero enclosed area, e.g. collinear points, traces the
  // same path twice and has no interior; refuse instead of returning it.
  double min_x = loop[0].x, max_x = loop[0].x, min_y = loop[0].y, max_y = loop[0].y;
  for (const Point2& p : loop) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double diam2 = (max_x - min_x) * (max_x - min_x) + (max_y - min_y) * (max_y - min_y);
  if (std::abs(polyline_signed_area(loop)) < 1e-10 * std::max(diam2, 1e-30))
    fail(ErrorCode::SingularSystem, "degenerate zero-area loop (collinear or self-retracing points)");

  PeriodicSpline s;
  s.control_ = loop;
  s.knots_.resize(k + 1);
  s.knots_[0] = 0.0;
  for (std::size_t j = 0; j < k; ++j) s.knots_[j + 1] = s.knots_[j] + chord[j];

  // Second-derivative values (moments) at the knots from the periodic C2
  // conditions; one cyclic tridiagonal system per coordinate.
  std::vector<double> sub(k), diag(k), super(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double h_prev = chord[(j + k - 1) % k];
    const double h_next = chord[j];
    sub[j] = h_prev / 6.0;
    diag[j] = (h_prev + h_next) / 3.0;
    super[j] = h_next / 6.0;
  }

  auto solve_axis = [&](auto coord) -> std::vector<double> {
    std::vector<double> rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t prev = (j + k - 1) % k;
      const std::size_t next = (j + 1) % k;
      rhs[j] = (coord(loop[next]) - coord(loop[j])) / chord[j] -
               (coord(loop[j]) - coord(loop[prev])) / chord[prev];
    }
    std::vector<double> m;
    if (!solve_cyclic_tridiagonal(sub, diag, super, rhs, m))
      fail(ErrorCode::SingularSystem, "periodic spline system could not be factorized");
    return m;
  };

  const std::vector<double> mx = solve_axis([](const Point2& p) { return p.x; });
  const std::vector<double> my = solve_axis([](const Point2& p) { return p.y; });

  auto coeffs = [&](const std::vector<double>& m, auto coord) {
    std::vector<Coeffs> c(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t next = (j + 1) % k;
      const double h = chord[j];
      c[j].a = coord(loop[j]);
      c[j].c = 0.5 * m[j];
      c[j].d = (m[next] - m[j]) / (6.0 * h);
      c[j].b = (coord(loop[next]) - coord(loop[j])) / h - h * (2.0 * m[j] + m[next]) / 6.0;
    }
    return c;
  };

  s.x_ = coeffs(mx, [](const Point2& p) { return p.x; });
  s.y_ = coeffs(my, [](const Point2& p) { return p.y; });

  s.cum_length_.resize(k + 1);
  s.cum_length_[0] = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double h = chord[j];
    auto speed = [&](double u) { return std::hypot(s.x_[j].d1(u), s.y_[j].d1(u)); };
    s.cum_length_[j + 1] = s.cum_length_[j] + integrate(speed, 0.0, h, kArcLengthRelTol * h);
  }
  return s;
}

PeriodicSpline PeriodicSpline::from_parts(std::vector<double> knots, std::vector<Coeffs> x,
                                          std::vector<Coeffs> y) {
  const std::size_t k = x.size();
  if (k < 3 || y.size() != k || knots.size() != k + 1)
    fail(ErrorCode::InvalidArgument, "inconsistent spline piece counts");
  if (knots.front() != 0.0) fail(ErrorCode::InvalidArgument, "knots must start at 0");
  for (std::size_t j = 0; j < k; ++j)
    if (!(knots[j] < knots[j + 1])) fail(ErrorCode::InvalidArgument, "knots must increase");

  PeriodicSpline s;
  s.knots_ = std::move(knots);
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  s.control_.resize(k);
  for (std::size_t j = 0; j < k; ++j) s.control_[j] = {s.x_[j].a, s.y_[j].a};
  s.cum_length_.resize(k + 1);
  s.cum_length_[0] = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double h = s.knots_[j + 1] - s.knots_[j];
    auto speed = [&](double u) { return std::hypot(s.x_[j].d1(u), s.y_[j].d1(u)); };
    s.cum_length_[j + 1] = s.cum_length_[j] + integrate(speed, 0.0, h, kArcLengthRelTol * h);
  }
  return s;
}

std::size_t PeriodicSpline::locate(double& t) const {
  const double p = period();
  t = std::fmod(t, p);
  if (t < 0.0) t += p;
  // upper_bound on knots, then step back to the covering segment.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  if (idx >= segment_count()) idx = segment_count() - 1;
  return idx;
}

Point2 PeriodicSpline::eval(double t) const {
  const std::size_t j = locate(t);
  const double u = t - knots_[j];
  return {x_[j].value(u), y_[j].value(u)};
}

Point2 PeriodicSpline::derivative(double t, int order) const {
  if (order != 1 && order != 2) fail(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
  const std::size_t j = locate(t);
  const double u = t - knots_[j];
  if (order == 1) return {x_[j].d1(u), y_[j].d1(u)};
  return {x_[j].d2(u), y_[j].d2(u)};
}

double PeriodicSpline::total_length() const { return cum_length_.back(); }

double PeriodicSpline::arc_length(double t0, double t1) const {
  const double p = period();
  if (!(t0 <= t1 && t1 <= t0 + p * (1.0 + 1e-12)))
    fail(ErrorCode::InvalidArgument, "arc_length requires t0 <= t1 <= t0 + period");

  double a = t0;
  locate(a);  // wraps a into [0, period)
  const double b = a + (t1 - t0);

  // Arc length from knot 0 to t, t in [0, period].
  auto from_start = [&](double t) {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t j = static_cast<std::size_t>(it - knots_.begin());
    j = j == 0 ? 0 : j - 1;
    if (j >= segment_count()) j = segment_count() - 1;
    const double u = t - knots_[j];
    auto speed = [&](double x) { return std::hypot(x_[j].d1(x), y_[j].d1(x)); };
    return cum_length_[j] + integrate(speed, 0.0, u, kArcLengthRelTol * std::max(u, 1e-9));
  };

  if (b <= p) return from_start(b) - from_start(a);
  return (total_length() - from_start(a)) + from_start(b - p);
}

double PeriodicSpline::parameter_at_arc_length(double s) const {
  const double total = total_length();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;

  const auto it = std::upper_bound(cum_length_.begin(), cum_length_.end(), s);
  std::size_t j = static_cast<std::size_t>(it - cum_length_.begin());
  j = j == 0 ? 0 : j - 1;
  if (j >= segment_count()) j = segment_count() - 1;

  const double target = s - cum_length_[j];
  const double h = knots_[j + 1] - knots_[j];
  auto speed = [&](double u) { return std::hypot(x_[j].d1(u), y_[j].d1(u)); };
  auto length_to = [&](double u) { return integrate(speed, 0.0, u, kArcLengthRelTol * h); };

  // Safeguarded Newton on A(u) = target; A is strictly increasing.
  double lo = 0.0, hi = h;
  double u = h * (target / std::max(cum_length_[j + 1] - cum_length_[j], 1e-300));
  u = std::clamp(u, lo, hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double err = length_to(u) - target;
    if (std::abs(err) <= 1e-11 * std::max(1.0, total)) break;
    if (err > 0.0)
      hi = u;
    else
      lo = u;
    const double sp = speed(u);
    double next = sp > 0.0 ? u - err / sp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return knots_[j] + u;
}

}  // namespace surfrec
