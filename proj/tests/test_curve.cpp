#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "frechet/bench.hpp"
#include "frechet/curve.hpp"

using namespace frechet;

TEST_CASE("parse_curve computes prefix lengths and bbox in one pass") {
  std::istringstream in("0 0\n1 0\n1 1\n");
  const curve c = parse_curve(in, "unit");
  REQUIRE(c.size() == 3);
  CHECK(c.subcurve_len(1, 1) == 0.0);
  CHECK(c.subcurve_len(1, 2) == 1.0);
  CHECK(c.subcurve_len(1, 3) == 2.0);
  CHECK(c.bbox().min_x == 0.0);
  CHECK(c.bbox().min_y == 0.0);
  CHECK(c.bbox().max_x == 1.0);
  CHECK(c.bbox().max_y == 1.0);
}

TEST_CASE("parse_curve single vertex") {
  std::istringstream in("5 5");
  const curve c = parse_curve(in);
  REQUIRE(c.size() == 1);
  CHECK(c.vertex(1).x == 5.0);
}

TEST_CASE("parse_curve tolerates duplicate vertices") {
  std::istringstream in("0 0\n0 0\n3 4\n");
  const curve c = parse_curve(in);
  REQUIRE(c.size() == 3);
  CHECK(c.subcurve_len(1, 2) == 0.0);
  CHECK(c.subcurve_len(1, 3) == 5.0);
}

TEST_CASE("parse_curve skips one non-numeric header and comments") {
  std::istringstream in("x y\n# a comment\n0 0\n\n1 0\n");
  const curve c = parse_curve(in);
  CHECK(c.size() == 2);
}

TEST_CASE("parse_curve error cases") {
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_curve(empty), parse_error);
  std::istringstream bad("0 0\n1 whoops\n");
  CHECK_THROWS_AS(parse_curve(bad), parse_error);
  std::istringstream three("0 0\n1 2 3\n");
  CHECK_THROWS_AS(parse_curve(three), parse_error);
  std::istringstream inf("0 0\n1 inf\n");
  CHECK_THROWS_AS(parse_curve(inf), parse_error);
}

TEST_CASE("point_at interpolates and hits vertices bitwise") {
  const curve c({{0, 0}, {1, 0}, {1, 1}});
  const point mid = c.at(2.5);
  CHECK(mid.x == 1.0);
  CHECK(mid.y == 0.5);
  CHECK(c.at(1.0) == c.vertex(1));
  CHECK(c.at(3.0) == c.vertex(3));
  CHECK(c.at(2.0) == c.vertex(2));
}

TEST_CASE("subcurve lengths match direct sums") {
  std::mt19937_64 g(3);
  walk_config wc;
  for (int t = 0; t < 200; ++t) {
    const curve c = random_walk_curve(g, wc);
    const int n = c.size();
    const int i = uniform_int(g, 1, n);
    const int i2 = uniform_int(g, i, n);
    double direct = 0.0;
    for (int k = i; k < i2; ++k) direct += dist(c.vertex(k), c.vertex(k + 1));
    CHECK(c.subcurve_len(i, i2) ==
          Catch::Approx(direct).epsilon(1e-9).margin(1e-12));
  }
}

TEST_CASE("point_at is continuous") {
  std::mt19937_64 g(4);
  walk_config wc;
  for (int t = 0; t < 50; ++t) {
    const curve c = random_walk_curve(g, wc);
    double max_seg = 0.0;
    for (int k = 1; k < c.size(); ++k)
      max_seg = std::max(max_seg, dist(c.vertex(k), c.vertex(k + 1)));
    for (int s = 0; s < 100; ++s) {
      const double eps = 1e-6;
      const double p = 1.0 + uniform01(g) * (c.size() - 1 - eps);
      CHECK(dist(c.at(p), c.at(p + eps)) <= eps * max_seg + 1e-12);
    }
  }
}

TEST_CASE("load_dataset resolves relative paths and ids") {
  const std::vector<curve> ds =
      load_dataset(std::string(FRECHET_DATA_DIR) + "/walks.txt");
  REQUIRE(ds.size() == 12);
  CHECK(ds[0].id() == "curves/walk_00.txt");
  for (const curve& c : ds) CHECK(c.size() >= 2);
}
