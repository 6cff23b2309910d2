#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "surfrec/io.hpp"
#include "surfrec/spline.hpp"

using namespace surfrec;

namespace {

// One-sided derivative at the seam taken from the raw segment coefficients.
Point2 seam_derivative_left(const PeriodicSpline& s, int order) {
  const std::size_t last = s.segment_count() - 1;
  const double h = s.knots()[last + 1] - s.knots()[last];
  const auto& cx = s.coeffs_x()[last];
  const auto& cy = s.coeffs_y()[last];
  return order == 1 ? Point2{cx.d1(h), cy.d1(h)} : Point2{cx.d2(h), cy.d2(h)};
}

double max_radial_deviation(const PeriodicSpline& s, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = s.period() * static_cast<double>(i) / static_cast<double>(samples);
    worst = std::max(worst, std::abs(s.eval(t).norm() - 1.0));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("spline");

TEST_CASE("interpolates the unit square corners exactly") {
  const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const PeriodicSpline s = PeriodicSpline::fit(square);
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 p = s.eval(s.knots()[i]);
    CHECK(distance(p, square[i]) < 1e-9);
  }
  CHECK(distance(s.eval(s.period()), square[0]) < 1e-9);  // closes back onto the first point
}

TEST_CASE("stays within 1e-4 of the unit circle through 32 samples") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::circle(1.0, 32));
  CHECK(max_radial_deviation(s, 10000) < 1e-4);
}

TEST_CASE("interpolation residual below 1e-9 at every knot") {
  for (const auto& loop : {oracles::circle(1.0, 16), oracles::ellipse(2.0, 1.0, 24),
                           oracles::star(48)}) {
    const PeriodicSpline s = PeriodicSpline::fit(loop);
    for (std::size_t i = 0; i < loop.size(); ++i)
      CHECK(distance(s.eval(s.knots()[i]), loop[i]) < 1e-9);
  }
}

TEST_CASE("seam is C2 within 1e-8") {
  for (const auto& loop : {oracles::circle(1.0, 16), oracles::star(64)}) {
    const PeriodicSpline s = PeriodicSpline::fit(loop);
    for (const int order : {1, 2}) {
      const Point2 right = s.derivative(0.0, order);
      const Point2 left = seam_derivative_left(s, order);
      const double scale = std::max(1.0, right.norm());
      CHECK(distance(left, right) / scale < 1e-8);
    }
  }
}

TEST_CASE("degenerate inputs are refused") {
  CHECK_THROWS_WITH_AS(PeriodicSpline::fit(std::vector<Point2>{{0, 0}, {1, 0}}),
                       doctest::Contains("TooFewPoints"), Error);
  CHECK_THROWS_WITH_AS(PeriodicSpline::fit(std::vector<Point2>{{0, 0}, {1, 0}, {2, 0}}),
                       doctest::Contains("SingularSystem"), Error);
  CHECK_THROWS_WITH_AS(PeriodicSpline::fit(std::vector<Point2>{{0, 0}, {0, 0}, {1, 1}}),
                       doctest::Contains("SingularSystem"), Error);
}

TEST_CASE("evaluation wraps periodically") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::ellipse(1.5, 0.8, 20));
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const double t = rng.uniform(-2.0 * s.period(), 2.0 * s.period());
    CHECK(distance(s.eval(t), s.eval(t + s.period())) < 1e-12);
  }
}

TEST_CASE("first derivative matches central differences") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::star(40));
  Rng rng(11);
  const double step = 1e-6;
  for (int rep = 0; rep < 100; ++rep) {
    const double t = rng.uniform(0.0, s.period());
    const Point2 fd = (s.eval(t + step) - s.eval(t - step)) / (2.0 * step);
    const Point2 exact = s.derivative(t, 1);
    CHECK(distance(fd, exact) / std::max(1.0, exact.norm()) < 1e-5);
  }
}

TEST_CASE("second derivative on a circle points toward the center") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::circle(1.0, 32));
  for (std::size_t i = 0; i < 32; ++i) {
    const double t = s.knots()[i];
    const Point2 radial = s.eval(t);
    CHECK(s.derivative(t, 2).dot(radial) < 0.0);
  }
}

TEST_CASE("arc length of a dense circle spline is the circumference") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::circle(1.0, 64));
  CHECK(s.arc_length(0.0, s.period()) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-3 / 6.3));
  CHECK(s.arc_length(1.0, 1.0) == 0.0);
}

TEST_CASE("arc length is additive") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::ellipse(2.0, 1.0, 32));
  Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    double a = rng.uniform(0.0, s.period());
    double b = a + rng.uniform(0.0, s.period() - (a - 0.0));
    double c = b + rng.uniform(0.0, s.period() - (b - a));
    if (c > a + s.period()) continue;
    const double whole = s.arc_length(a, c);
    const double split = s.arc_length(a, b) + s.arc_length(b, c);
    CHECK(std::abs(whole - split) < 1e-8 * std::max(1.0, whole));
  }
}

TEST_CASE("arc length inversion is consistent") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::star(56));
  Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const double target = rng.uniform(0.0, s.total_length());
    const double t = s.parameter_at_arc_length(target);
    CHECK(s.arc_length(0.0, t) == doctest::Approx(target).epsilon(1e-9));
  }
}

TEST_CASE("convergence order on circle samples is at least 3.5") {
  const double e16 = max_radial_deviation(PeriodicSpline::fit(oracles::circle(1.0, 16)), 4000);
  const double e32 = max_radial_deviation(PeriodicSpline::fit(oracles::circle(1.0, 32)), 4000);
  const double e64 = max_radial_deviation(PeriodicSpline::fit(oracles::circle(1.0, 64)), 4000);
  CHECK(std::log2(e16 / e32) >= 3.5);
  CHECK(std::log2(e32 / e64) >= 3.5);
}

TEST_CASE("fitting transformed points gives the transformed curve") {
  const std::vector<Point2> base = oracles::ellipse(1.3, 0.7, 24);
  const double angle = 0.83;
  const Point2 shift{2.5, -1.25};
  auto transform = [&](const Point2& p) {
    return Point2{p.x * std::cos(angle) - p.y * std::sin(angle) + shift.x,
                  p.x * std::sin(angle) + p.y * std::cos(angle) + shift.y};
  };
  std::vector<Point2> moved(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) moved[i] = transform(base[i]);

  const PeriodicSpline s0 = PeriodicSpline::fit(base);
  const PeriodicSpline s1 = PeriodicSpline::fit(moved);
  REQUIRE(s0.period() == doctest::Approx(s1.period()).epsilon(1e-12));
  for (int i = 0; i < 200; ++i) {
    const double t = s0.period() * i / 200.0;
    CHECK(distance(transform(s0.eval(t)), s1.eval(t)) < 1e-9);
  }
}

TEST_CASE("JSON round trip preserves the curve") {
  const PeriodicSpline s = PeriodicSpline::fit(oracles::star(32));
  const PeriodicSpline back = spline_from_json(spline_to_json(s));
  for (int i = 0; i < 100; ++i) {
    const double t = s.period() * i / 100.0;
    CHECK(distance(s.eval(t), back.eval(t)) < 1e-12);
  }
}

TEST_CASE("square spline matches the golden file") {
  const PeriodicSpline s = PeriodicSpline::fit(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::ifstream in(std::string(TEST_DATA_DIR) + "/golden/square_spline.json");
  REQUIRE(in.good());
  nlohmann::json golden;
  in >> golden;
  const nlohmann::json actual = spline_to_json(s);

  REQUIRE(actual["knots"].size() == golden["knots"].size());
  for (std::size_t i = 0; i < golden["knots"].size(); ++i)
    CHECK(actual["knots"][i].get<double>() ==
          doctest::Approx(golden["knots"][i].get<double>()).epsilon(1e-12));
  for (const char* key : {"coeffs_x", "coeffs_y"}) {
    REQUIRE(actual[key].size() == golden[key].size());
    for (std::size_t i = 0; i < golden[key].size(); ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(actual[key][i][j].get<double>() ==
              doctest::Approx(golden[key][i][j].get<double>()).epsilon(1e-12));
  }
}

TEST_SUITE_END();
