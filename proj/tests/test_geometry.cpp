#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "surfrec/geometry.hpp"
#include "surfrec/io.hpp"
#include "surfrec/linalg.hpp"

using namespace surfrec;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("index construction") {
  CHECK(build_index({{0, 0}}).size() == 1);
  CHECK(build_index({{0, 0}, {1, 0}, {0, 1}}).size() == 3);

  CHECK_THROWS_AS(build_index({}), Error);
  CHECK_THROWS_WITH_AS(build_index({{0, 0}, {0, 0}}), doctest::Contains("DuplicatePoints"), Error);
  CHECK_THROWS_WITH_AS(build_index({{0, 0}, {1, std::nan("")}}), doctest::Contains("InvalidArgument"),
                       Error);

  // Pairs closer than the coincidence threshold are rejected, wider ones kept.
  CHECK_THROWS_AS(build_index({{0, 0}, {5e-13, 0}, {1, 1}}), Error);
  CHECK(build_index({{0, 0}, {5e-12, 0}, {1, 1}}).size() == 3);
}

TEST_CASE("nth_nearest examples") {
  const NeighborIndex square = build_index({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // (1,0) and (0,1) tie at distance 1; the lower index wins.
  CHECK(square.nth_nearest(0, 1) == 1);
  CHECK(square.nth_nearest(0, 2) == 3);
  CHECK(square.nth_nearest(0, 3) == 2);

  const NeighborIndex collinear = build_index({{0, 0}, {1, 0}, {3, 0}});
  CHECK(collinear.nth_nearest(0, 2) == 2);

  CHECK_THROWS_WITH_AS(collinear.nth_nearest(0, 3), doctest::Contains("RankOutOfRange"), Error);
  CHECK_THROWS_AS(collinear.nth_nearest(0, 0), Error);
}

TEST_CASE("nth_nearest matches the exhaustive sort on random sets") {
  Rng rng(42);
  for (const std::size_t k : {std::size_t{2}, std::size_t{7}, std::size_t{50}, std::size_t{200}}) {
    std::vector<Point2> pts(k);
    for (Point2& p : pts) p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const NeighborIndex index = build_index(pts);
    for (std::size_t q = 0; q < k; ++q) {
      const auto expected = oracles::knn_by_sort(pts, q);
      for (std::size_t n = 1; n <= k - 1; ++n) {
        const std::size_t got = index.nth_nearest(q, n);
        CHECK(got == expected[n - 1]);
        CHECK(got != q);
      }
    }
  }
}

TEST_CASE("signed area basics") {
  const std::vector<Point2> ccw{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Point2> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(polyline_signed_area(ccw) == doctest::Approx(1.0));
  CHECK(polyline_signed_area(cw) == doctest::Approx(-1.0));
  CHECK(polyline_signed_area(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(polyline_signed_area(std::vector<Point2>{{0, 0}, {1, 0}}), Error);
}

TEST_CASE("signed area negates under reversal and survives rotation") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Point2> loop(3 + rng.next_u64() % 10);
    for (Point2& p : loop) p = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double area = polyline_signed_area(loop);

    std::vector<Point2> reversed(loop.rbegin(), loop.rend());
    CHECK(polyline_signed_area(reversed) == doctest::Approx(-area).epsilon(1e-12));

    std::vector<Point2> rotated(loop.begin() + 2, loop.end());
    rotated.insert(rotated.end(), loop.begin(), loop.begin() + 2);
    CHECK(polyline_signed_area(rotated) == doctest::Approx(area).epsilon(1e-12));
  }
}

TEST_CASE("self-intersection examples") {
  CHECK_FALSE(polyline_self_intersects(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(polyline_self_intersects(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK_FALSE(polyline_self_intersects(oracles::circle(1.0, 16)));
  CHECK_THROWS_AS(polyline_self_intersects(std::vector<Point2>{{0, 0}, {1, 0}}), Error);
}

TEST_CASE("self-intersection agrees with the parametric oracle on random loops") {
  Rng rng(99);
  int hits = 0;
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<Point2> loop(4 + rng.next_u64() % 8);
    for (Point2& p : loop) p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const bool expected = oracles::loop_self_intersects_by_pairs(loop);
    CHECK(polyline_self_intersects(loop) == expected);
    hits += expected ? 1 : 0;
  }
  CHECK(hits > 0);  // random loops must exercise the positive branch
}

TEST_CASE("points CSV round trip and error paths") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "surfrec_geom_io";
  fs::create_directories(dir);

  const std::vector<Point2> pts{{0.125, -3.5}, {1.0 / 3.0, 2e-17}};
  write_points_csv(dir / "pts.csv", pts);
  const std::vector<Point2> back = read_points_csv(dir / "pts.csv");
  REQUIRE(back.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i].x == pts[i].x);  // 17 significant digits are lossless
    CHECK(back[i].y == pts[i].y);
  }

  CHECK_THROWS_WITH_AS(read_points_csv(dir / "missing.csv"), doctest::Contains("IoFailure"), Error);
}

TEST_SUITE_END();
