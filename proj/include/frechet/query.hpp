#ifndef FRECHET_QUERY_HPP
#define FRECHET_QUERY_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <thread>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/decider.hpp"

namespace frechet {

/// The 8-dimensional key of a curve: start point, end point, and the
/// bounding-box extremes. A Fréchet distance of at most delta displaces
/// each of these coordinates by at most delta, which makes a +-delta box
/// query over the keys a complete candidate filter.
struct kd_key8 {
  std::array<double, 8> v{};

  static kd_key8 of(const curve& c) {
    const bounding_box& b = c.bbox();
    const point s = c.vertex(1);
    const point e = c.vertex(c.size());
    return {{s.x, s.y, e.x, e.y, b.min_x, b.min_y, b.max_x, b.max_y}};
  }
};

/**
 * Static 8-dimensional kd-tree over curve keys: median splits cycling
 * through the dimensions, 16-entry leaf buckets scanned linearly, closed
 * axis-aligned box range reporting. Immutable after construction and
 * shareable across threads.
 */
class kd_tree8 {
 public:
  explicit kd_tree8(std::vector<kd_key8> keys) : keys_(std::move(keys)) {
    order_.resize(keys_.size());
    for (std::size_t k = 0; k < order_.size(); ++k)
      order_[k] = static_cast<int>(k);
    if (!order_.empty())
      root_ = build(0, static_cast<int>(order_.size()), 0);
  }

  std::size_t size() const { return keys_.size(); }

  /// Indices of all keys inside the closed box [lo, hi], in increasing order.
  std::vector<int> range_query(const std::array<double, 8>& lo,
                               const std::array<double, 8>& hi) const {
    std::vector<int> out;
    if (root_ >= 0) collect(root_, lo, hi, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr int LEAF_SIZE = 16;

  struct node {
    int dim = 0;
    double split = 0.0;
    int left = -1, right = -1;
    int begin = 0, end = 0;  // order_ range for leaves
    bool leaf = false;
  };

  int build(int begin, int end, int depth) {
    node nd;
    if (end - begin <= LEAF_SIZE) {
      nd.leaf = true;
      nd.begin = begin;
      nd.end = end;
      nodes_.push_back(nd);
      return static_cast<int>(nodes_.size()) - 1;
    }
    const int dim = depth % 8;
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end, [&](int a, int b) {
                       return keys_[a].v[dim] < keys_[b].v[dim];
                     });
    nd.dim = dim;
    nd.split = keys_[order_[mid]].v[dim];
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(nd);
    nodes_[id].left = build(begin, mid, depth + 1);
    nodes_[id].right = build(mid, end, depth + 1);
    return id;
  }

  void collect(int v, const std::array<double, 8>& lo,
               const std::array<double, 8>& hi, std::vector<int>& out) const {
    const node& nd = nodes_[v];
    if (nd.leaf) {
      for (int k = nd.begin; k < nd.end; ++k) {
        const int idx = order_[k];
        bool inside = true;
        for (int d = 0; d < 8 && inside; ++d)
          inside = lo[d] <= keys_[idx].v[d] && keys_[idx].v[d] <= hi[d];
        if (inside) out.push_back(idx);
      }
      return;
    }
    if (lo[nd.dim] <= nd.split) collect(nd.left, lo, hi, out);
    if (hi[nd.dim] >= nd.split) collect(nd.right, lo, hi, out);
  }

  std::vector<kd_key8> keys_;
  std::vector<int> order_;
  std::vector<node> nodes_;
  int root_ = -1;
};

inline kd_tree8 build_index(const std::vector<curve>& dataset) {
  std::vector<kd_key8> keys;
  keys.reserve(dataset.size());
  for (const curve& c : dataset) keys.push_back(kd_key8::of(c));
  return kd_tree8(std::move(keys));
}

/// Candidate generation: every curve whose Fréchet distance to the query is
/// at most delta is guaranteed to be returned.
inline std::vector<int> candidates(const kd_tree8& tree, const curve& query,
                                   double delta) {
  const kd_key8 k = kd_key8::of(query);
  std::array<double, 8> lo = k.v, hi = k.v;
  for (int d = 0; d < 8; ++d) {
    lo[d] -= delta;
    hi[d] += delta;
  }
  return tree.range_query(lo, hi);
}

/**
 * Near-neighbor query: runs the decider on every kd-tree candidate and
 * returns the indices of the close curves in dataset order. Candidates are
 * distributed over `threads` workers (hardware concurrency when 0); the
 * result does not depend on the schedule.
 */
inline std::vector<int> find_close_curves(const kd_tree8& tree,
                                          const std::vector<curve>& dataset,
                                          const curve& query, double delta,
                                          int threads = 0) {
  const std::vector<int> cand = candidates(tree, query, delta);
  std::vector<char> close(cand.size(), 0);

  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  threads = std::min(
      threads,
      static_cast<int>(std::max<std::size_t>(cand.size(), std::size_t{1})));

  const auto worker = [&](std::atomic<std::size_t>& next) {
    decide_config cfg;
    for (std::size_t k = next.fetch_add(1); k < cand.size();
         k = next.fetch_add(1)) {
      close[k] = decide(query, dataset[static_cast<std::size_t>(cand[k])],
                        delta, cfg)
                         .verdict == filter_outcome::close
                     ? 1
                     : 0;
    }
  };

  if (threads <= 1 || cand.size() <= 1) {
    std::atomic<std::size_t> next{0};
    worker(next);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, std::ref(next));
    for (std::thread& t : pool) t.join();
  }

  std::vector<int> out;
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (close[k]) out.push_back(cand[k]);
  return out;
}

}  // namespace frechet

#endif
