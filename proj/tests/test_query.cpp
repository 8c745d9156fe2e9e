#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "frechet/bench.hpp"
#include "frechet/query.hpp"

using namespace frechet;

namespace {

std::vector<curve> make_dataset(std::mt19937_64& g, int count) {
  walk_config wc;
  wc.min_vertices = 4;
  wc.max_vertices = 24;
  wc.start_spread = 10.0;
  std::vector<curve> ds;
  for (int k = 0; k < count; ++k) {
    if (k % 4 == 3) {
      ds.push_back(perturbed_copy(g, ds.back(), 0.3, "c" + std::to_string(k)));
    } else {
      ds.push_back(random_walk_curve(g, wc, "c" + std::to_string(k)));
    }
  }
  return ds;
}

}  // namespace

TEST_CASE("kd_tree8 range queries match a linear scan") {
  std::mt19937_64 g(51);
  for (int round = 0; round < 30; ++round) {
    const int count = uniform_int(g, 1, 300);
    std::vector<kd_key8> keys(static_cast<std::size_t>(count));
    for (auto& k : keys)
      for (double& v : k.v) v = uniform01(g) * 20.0 - 10.0;
    const kd_tree8 tree(keys);
    for (int q = 0; q < 20; ++q) {
      std::array<double, 8> lo, hi;
      for (int d = 0; d < 8; ++d) {
        const double a = uniform01(g) * 22.0 - 11.0;
        const double b = a + uniform01(g) * 12.0;
        lo[d] = a;
        hi[d] = b;
      }
      const std::vector<int> got = tree.range_query(lo, hi);
      std::vector<int> want;
      for (int k = 0; k < count; ++k) {
        bool inside = true;
        for (int d = 0; d < 8 && inside; ++d)
          inside = lo[d] <= keys[(std::size_t)k].v[d] &&
                   keys[(std::size_t)k].v[d] <= hi[d];
        if (inside) want.push_back(k);
      }
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("whole-space query returns every curve") {
  std::mt19937_64 g(52);
  const std::vector<curve> ds = make_dataset(g, 64);
  const kd_tree8 tree = build_index(ds);
  CHECK(candidates(tree, ds[0], 1e9).size() == ds.size());
  const std::vector<curve> one = {ds[0]};
  const kd_tree8 single = build_index(one);
  CHECK(candidates(single, ds[0], 0.0).size() == 1);
}

TEST_CASE("candidates never drop a close curve") {
  std::mt19937_64 g(53);
  const std::vector<curve> ds = make_dataset(g, 150);
  const kd_tree8 tree = build_index(ds);
  for (int q = 0; q < 60; ++q) {
    const curve& query = ds[uniform_below(g, ds.size())];
    const double delta = uniform01(g) * 4.0;
    const std::vector<int> cand = candidates(tree, query, delta);
    const std::set<int> cand_set(cand.begin(), cand.end());
    for (int k = 0; k < static_cast<int>(ds.size()); ++k) {
      if (decide(query, ds[(std::size_t)k], delta).verdict ==
          filter_outcome::close)
        CHECK(cand_set.count(k) == 1);
    }
  }
}

TEST_CASE("find_close_curves equals brute force and ignores thread count") {
  std::mt19937_64 g(54);
  const std::vector<curve> ds = make_dataset(g, 200);
  const kd_tree8 tree = build_index(ds);
  for (int q = 0; q < 100; ++q) {
    const curve& query = ds[uniform_below(g, ds.size())];
    const double delta = uniform01(g) * 5.0;
    std::vector<int> brute;
    for (int k = 0; k < static_cast<int>(ds.size()); ++k)
      if (decide(query, ds[(std::size_t)k], delta).verdict ==
          filter_outcome::close)
        brute.push_back(k);
    const auto r1 = find_close_curves(tree, ds, query, delta, 1);
    REQUIRE(r1 == brute);
    if (q % 10 == 0) {
      CHECK(find_close_curves(tree, ds, query, delta, 4) == brute);
      CHECK(find_close_curves(tree, ds, query, delta, 8) == brute);
    }
  }
}

TEST_CASE("the query curve itself is returned at delta zero") {
  std::mt19937_64 g(55);
  const std::vector<curve> ds = make_dataset(g, 40);
  const kd_tree8 tree = build_index(ds);
  const auto out = find_close_curves(tree, ds, ds[7], 0.0, 1);
  bool has_self = false;
  for (int idx : out) has_self = has_self || idx == 7;
  CHECK(has_self);
}
