#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "frechet/bench.hpp"
#include "frechet/geometry.hpp"

using namespace frechet;

TEST_CASE("sq_dist basics") {
  CHECK(sq_dist({0, 0}, {3, 4}) == 25.0);
  CHECK(sq_dist({1, 1}, {1, 1}) == 0.0);
  CHECK(sq_dist({-1, 0}, {2, 0}) == 9.0);
}

TEST_CASE("sq_dist is symmetric and zero on the diagonal") {
  std::mt19937_64 g(1);
  for (int t = 0; t < 1000; ++t) {
    const point a{uniform01(g) * 100 - 50, uniform01(g) * 100 - 50};
    const point b{uniform01(g) * 100 - 50, uniform01(g) * 100 - 50};
    CHECK(sq_dist(a, b) == sq_dist(b, a));
    CHECK(sq_dist(a, a) == 0.0);
  }
}

TEST_CASE("interpolate") {
  const point mid = interpolate({{0, 0}, {2, 0}}, 0.5);
  CHECK(mid.x == 1.0);
  CHECK(mid.y == 0.0);
  const point deg = interpolate({{1, 2}, {1, 2}}, 0.7);
  CHECK(deg.x == 1.0);
  CHECK(deg.y == 2.0);
  const point lin = interpolate({{0, 0}, {4, 8}}, 0.25);
  CHECK(lin.x == 1.0);
  CHECK(lin.y == 2.0);
}

TEST_CASE("circle_segment_params on a crossing chord") {
  // |(0,-2) + t*(0,4)| <= 1  <=>  t in [1/4, 3/4]
  const unit_interval ui =
      circle_segment_params({0, 0}, 1.0, {{0, -2}, {0, 2}});
  REQUIRE(!ui.empty());
  CHECK(ui.lo == Catch::Approx(0.25).margin(1e-12));
  CHECK(ui.hi == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("circle_segment_params containment and disjointness") {
  const unit_interval inside =
      circle_segment_params({0, 0}, 10.0, {{1, 1}, {2, 2}});
  CHECK(inside.lo == 0.0);
  CHECK(inside.hi == 1.0);
  CHECK(circle_segment_params({0, 0}, 1.0, {{5, 5}, {6, 5}}).empty());
}

TEST_CASE("circle_segment_params degenerate segment") {
  const unit_interval in =
      circle_segment_params({0, 0}, 1.0, {{0.5, 0}, {0.5, 0}});
  CHECK(in.lo == 0.0);
  CHECK(in.hi == 1.0);
  CHECK(circle_segment_params({0, 0}, 1.0, {{2, 0}, {2, 0}}).empty());
}

namespace {

struct random_triple {
  point c;
  double r;
  segment s;
};

random_triple draw(std::mt19937_64& g) {
  const auto coord = [&] { return uniform01(g) * 8.0 - 4.0; };
  random_triple t;
  t.c = {coord(), coord()};
  t.r = uniform01(g) * 3.0;
  t.s = {{coord(), coord()}, {coord(), coord()}};
  if (uniform01(g) < 0.02) t.s.end = t.s.start;  // degenerate segments too
  return t;
}

}  // namespace

TEST_CASE("circle_segment_params agrees with dense membership sampling") {
  // full scale when FRECHET_HEAVY_TESTS is set, trimmed otherwise
  const long trials =
      std::getenv("FRECHET_HEAVY_TESTS") != nullptr ? 1000000 : 200000;
  std::mt19937_64 g(7);
  long mismatches = 0;
  for (long t = 0; t < trials; ++t) {
    const random_triple tr = draw(g);
    const unit_interval ui = circle_segment_params(tr.c, tr.r, tr.s);
    const double r2 = tr.r * tr.r;
    for (int k = 0; k < 1000; ++k) {
      const double x = k / 999.0;
      if (!ui.empty() &&
          (std::abs(x - ui.lo) < 1e-6 || std::abs(x - ui.hi) < 1e-6))
        continue;
      const bool inside = !ui.empty() && ui.lo <= x && x <= ui.hi;
      const bool free = sq_dist(interpolate(tr.s, x), tr.c) <= r2;
      if (inside != free) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("circle_segment_params is monotone in the radius") {
  std::mt19937_64 g(8);
  for (int t = 0; t < 20000; ++t) {
    const random_triple tr = draw(g);
    const double r2 = tr.r + uniform01(g) * 2.0;
    const unit_interval small = circle_segment_params(tr.c, tr.r, tr.s);
    const unit_interval big = circle_segment_params(tr.c, r2, tr.s);
    if (small.empty()) continue;
    REQUIRE(!big.empty());
    CHECK(big.lo <= small.lo + 1e-9);
    CHECK(big.hi >= small.hi - 1e-9);
  }
}
