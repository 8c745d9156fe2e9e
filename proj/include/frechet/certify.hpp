#ifndef FRECHET_CERTIFY_HPP
#define FRECHET_CERTIFY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frechet/certificate.hpp"
#include "frechet/complete_decider.hpp"
#include "frechet/curve.hpp"
#include "frechet/freespace.hpp"

namespace frechet {

class cut_not_found : public std::logic_error {
 public:
  cut_not_found()
      : std::logic_error(
            "far verdict could not be certified from the recorded non-free "
            "segments") {}
};

class missing_predecessor : public std::logic_error {
 public:
  missing_predecessor()
      : std::logic_error("reach interval chain is missing a predecessor") {}
};

/**
 * Static index over points keyed for the query "report and remove every
 * entry whose key lies to the lower right of (p,q)", i.e. key.p >= p and
 * key.q <= q. Nodes are heap-ordered by q (minimum on top) with median
 * splits on p, in the style of a priority search tree; deleting reported
 * entries promotes the smaller-q child upward, so each entry is reported at
 * most once and a query costs O(log size) per reported element.
 */
class report_delete_index {
 public:
  struct entry {
    double p, q;
    int32_t payload;
  };

  explicit report_delete_index(std::vector<entry> items) {
    std::sort(items.begin(), items.end(),
              [](const entry& a, const entry& b) { return a.p < b.p; });
    nodes_.reserve(items.size());
    root_ = build(std::move(items));
  }

  bool empty() const { return root_ < 0 || !nodes_[root_].has; }

  void report_and_delete(param_pair at, std::vector<int32_t>& out) {
    visit(root_, at, out);
  }

 private:
  struct node {
    entry e{};
    bool has = false;
    double left_max_p = 0.0;  // largest p stored in the left subtree
    int left = -1, right = -1;
  };

  int build(std::vector<entry> items) {
    if (items.empty()) return -1;
    std::size_t min_at = 0;
    for (std::size_t k = 1; k < items.size(); ++k)
      if (items[k].q < items[min_at].q) min_at = k;
    node nd;
    nd.e = items[min_at];
    nd.has = true;
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(min_at));
    const std::size_t mid = items.size() / 2;
    nd.left_max_p = mid > 0 ? items[mid - 1].p : 0.0;
    std::vector<entry> left(items.begin(), items.begin() + mid);
    std::vector<entry> right(items.begin() + mid, items.end());
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(nd);
    nodes_[id].left = build(std::move(left));
    nodes_[id].right = build(std::move(right));
    return id;
  }

  // Removes v's entry and pulls up the smaller-q descendant chain.
  void promote(int v) {
    while (true) {
      node& nd = nodes_[v];
      const int l = nd.left, r = nd.right;
      const bool lh = l >= 0 && nodes_[l].has;
      const bool rh = r >= 0 && nodes_[r].has;
      if (!lh && !rh) {
        nd.has = false;
        return;
      }
      const int src = (!rh || (lh && nodes_[l].e.q <= nodes_[r].e.q)) ? l : r;
      nd.e = nodes_[src].e;
      v = src;
    }
  }

  void visit(int v, param_pair at, std::vector<int32_t>& out) {
    if (v < 0) return;
    node& nd = nodes_[v];
    if (!nd.has || nd.e.q > at.q) return;  // heap: subtree minimum already high
    while (nd.has && nd.e.q <= at.q && nd.e.p >= at.p) {
      out.push_back(nd.e.payload);
      promote(v);
    }
    if (!nd.has || nd.e.q > at.q) return;
    if (nd.left >= 0 && nd.left_max_p >= at.p) visit(nd.left, at, out);
    visit(nd.right, at, out);
  }

  std::vector<node> nodes_;
  int root_ = -1;
};

/// Plain-scan twin of report_delete_index, kept for differential testing.
class linear_report_delete {
 public:
  using entry = report_delete_index::entry;
  explicit linear_report_delete(std::vector<entry> items)
      : items_(std::move(items)), alive_(items_.size(), true) {}

  void report_and_delete(param_pair at, std::vector<int32_t>& out) {
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (!alive_[k]) continue;
      if (items_[k].p >= at.p && items_[k].q <= at.q) {
        alive_[k] = false;
        out.push_back(items_[k].payload);
      }
    }
  }

 private:
  std::vector<entry> items_;
  std::vector<bool> alive_;
};

namespace detail {

inline param_pair first_point(const reach_interval& r) {
  return r.axis == axis_kind::vertical ? param_pair{r.fixed, r.lo}
                                       : param_pair{r.lo, r.fixed};
}

// The point of the responsible interval J from which the target is
// reachable by one straight move: the closest point of J that does not
// exceed the target in either coordinate.
inline param_pair connect_point(const reach_interval& j, param_pair target) {
  return j.axis == axis_kind::vertical
             ? param_pair{j.fixed, std::min(j.hi, target.q)}
             : param_pair{std::min(j.hi, target.p), j.fixed};
}

inline void append_pt(std::vector<param_pair>& pts, param_pair t) {
  if (!pts.empty() && pts.back() == t) return;
  pts.push_back(t);
}

inline param_pair lower_right(const boundary_interval& b) {
  return b.axis == axis_kind::vertical ? param_pair{b.fixed, b.lo}
                                       : param_pair{b.hi, b.fixed};
}

inline param_pair upper_left(const boundary_interval& b) {
  return b.axis == axis_kind::vertical ? param_pair{b.fixed, b.hi}
                                       : param_pair{b.lo, b.fixed};
}

}  // namespace detail

/// Rebuilds a feasible traversal by walking predecessor links backwards from
/// the interval that contains (n,m), then emitting the visited interval
/// entry points in forward order.
inline certificate build_yes_certificate(const exploration_log& log,
                                         int32_t goal, int n, int m) {
  if (goal < 0) throw missing_predecessor();
  std::vector<std::pair<int32_t, param_pair>> chain;
  int32_t cur = goal;
  param_pair x{static_cast<double>(n), static_cast<double>(m)};
  while (log.iv(cur).pred >= 0) {
    chain.emplace_back(cur, x);
    const reach_interval& iv = log.iv(cur);
    if (static_cast<std::size_t>(iv.pred) >= log.arena.size())
      throw missing_predecessor();
    const reach_interval& j = log.iv(iv.pred);
    x = detail::connect_point(j, detail::first_point(iv));
    cur = iv.pred;
  }
  certificate cert;
  cert.kind = cert_kind::yes;
  detail::append_pt(cert.points, {1.0, 1.0});
  detail::append_pt(cert.points, x);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    detail::append_pt(cert.points, detail::first_point(log.iv(it->first)));
    detail::append_pt(cert.points, it->second);
  }
  return cert;
}

/// YES certificate from a filter's visited-position witness.
inline certificate yes_from_witness(const std::vector<param_pair>& witness) {
  certificate cert;
  cert.kind = cert_kind::yes;
  for (param_pair t : witness) detail::append_pt(cert.points, t);
  return cert;
}

/// Degenerate close instances (n==1 or m==1, or both): the straight
/// boundary run is a witness.
inline certificate yes_degenerate(int n, int m) {
  certificate cert;
  cert.kind = cert_kind::yes;
  detail::append_pt(cert.points, {1.0, 1.0});
  detail::append_pt(cert.points,
                    {static_cast<double>(n), static_cast<double>(m)});
  return cert;
}

/// NO certificate from the negative filter's witness: one whole column (a
/// pi vertex far from all of sigma) or one whole row, cutting the diagram.
inline certificate no_from_far_vertex(axis_kind axis, int vertex, int n,
                                      int m) {
  certificate cert;
  cert.kind = cert_kind::no;
  const double v = vertex;
  if (axis == axis_kind::vertical) {
    cert.points = {{v, 1.0}, {v, static_cast<double>(m)}};
  } else {
    cert.points = {{static_cast<double>(n), v}, {1.0, v}};
  }
  return cert;
}

namespace detail {

// Extent of the strictly non-free prefix of a row/column around a non-free
// first vertex: scans the other curve forward from vertex 1 and stops just
// short of the first circle crossing.
inline double nonfree_prefix(point center, const curve& c, double delta) {
  double ext = 1.0;
  for (int k = 1; k < c.size(); ++k) {
    const unit_interval raw = circle_segment_params(center, delta, c.seg(k));
    if (raw.empty()) {
      ext = k + 1;
      continue;
    }
    if (raw.lo > 0.0) {
      const double cand = k + raw.lo - complement_margin(k + raw.lo);
      if (cand > ext) ext = std::min(cand, static_cast<double>(k + 1));
    }
    break;
  }
  return ext;
}

// Symmetric suffix extent, scanning backwards from the last vertex.
inline double nonfree_suffix(point center, const curve& c, double delta) {
  double ext = c.size();
  for (int k = c.size() - 1; k >= 1; --k) {
    const unit_interval raw = circle_segment_params(center, delta, c.seg(k));
    if (raw.empty()) {
      ext = k;
      continue;
    }
    if (raw.hi < 1.0) {
      const double cand = k + raw.hi + complement_margin(k + raw.hi);
      if (cand < ext) ext = std::max(cand, static_cast<double>(k));
    }
    break;
  }
  return ext;
}

}  // namespace detail

/// Cut through the non-free neighborhood of a non-free (1,1): from the end
/// of row 1's non-free prefix through the corner up column 1's prefix.
inline certificate no_from_nonfree_start(const curve& pi, const curve& sigma,
                                         double delta) {
  const double p0 = detail::nonfree_prefix(sigma.vertex(1), pi, delta);
  const double q0 = detail::nonfree_prefix(pi.vertex(1), sigma, delta);
  certificate cert;
  cert.kind = cert_kind::no;
  detail::append_pt(cert.points, {p0, 1.0});
  detail::append_pt(cert.points, {1.0, 1.0});
  detail::append_pt(cert.points, {1.0, q0});
  return cert;
}

/// Mirror image for a non-free (n,m): up the non-free suffix of column n,
/// then leftward along row m's suffix.
inline certificate no_from_nonfree_end(const curve& pi, const curve& sigma,
                                       double delta) {
  const int n = pi.size(), m = sigma.size();
  const double q1 = detail::nonfree_suffix(pi.vertex(n), sigma, delta);
  const double p1 = detail::nonfree_suffix(sigma.vertex(m), pi, delta);
  certificate cert;
  cert.kind = cert_kind::no;
  detail::append_pt(cert.points, {static_cast<double>(n), q1});
  detail::append_pt(cert.points,
                    {static_cast<double>(n), static_cast<double>(m)});
  detail::append_pt(cert.points, {p1, static_cast<double>(m)});
  return cert;
}

/// One-point certificate for a strictly non-free parameter point that lies
/// on both a start-side and an end-side diagram boundary.
inline certificate no_single_point(param_pair t) {
  certificate cert;
  cert.kind = cert_kind::no;
  cert.points = {t};
  return cert;
}

namespace detail {

// Queue traversal over non-free pieces: start from pieces whose lower-right
// endpoint touches the bottom or right diagram boundary, repeatedly report
// and remove the pieces reachable by a lower-right move from the current
// piece's upper-left endpoint, and stop at the top/left boundary.
inline std::optional<certificate> try_build_cut(
    const std::vector<boundary_interval>& pieces, int n, int m) {
  const double dn = n, dm = m;
  std::vector<int32_t> queue;
  std::vector<int32_t> parent(pieces.size(), -1);
  std::vector<report_delete_index::entry> rest;
  std::vector<char> seeded(pieces.size(), 0);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const param_pair lr = lower_right(pieces[k]);
    if (lr.q == 1.0 || lr.p == dn) {
      queue.push_back(static_cast<int32_t>(k));
      seeded[k] = 1;
    } else {
      rest.push_back({lr.p, lr.q, static_cast<int32_t>(k)});
    }
  }
  report_delete_index idx(std::move(rest));

  std::vector<int32_t> reported;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int32_t cur = queue[head];
    const param_pair ul = upper_left(pieces[cur]);
    if (ul.q == dm || ul.p == 1.0) {
      std::vector<int32_t> rev;
      for (int32_t walk = cur; walk >= 0; walk = parent[walk])
        rev.push_back(walk);
      certificate cert;
      cert.kind = cert_kind::no;
      for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        append_pt(cert.points, lower_right(pieces[*it]));
        append_pt(cert.points, upper_left(pieces[*it]));
      }
      return cert;
    }
    reported.clear();
    idx.report_and_delete(ul, reported);
    for (int32_t nxt : reported) {
      parent[nxt] = cur;
      queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * NO certificate for a far verdict of the complete decider. First tries the
 * non-free pieces recorded during exploration; if those do not connect into
 * a cut, harvests the non-free pieces of every integer column and row and
 * tries again. Any cut through non-free cell-boundary pieces can be
 * expressed over that grid, so the fallback only fails on degenerate
 * tangency configurations, which is reported as cut_not_found.
 */
inline certificate build_no_certificate(const exploration_log& log,
                                        const curve& pi, const curve& sigma,
                                        double delta) {
  const int n = pi.size(), m = sigma.size();
  if (auto cert = detail::try_build_cut(log.nonfree.pieces, n, m)) return *cert;

  nonfree_log harvest;
  harvest.enabled = true;
  for (int i = 1; i <= n; ++i)
    scan_nonfree(pi, sigma, axis_kind::vertical, i, 1, m, delta, harvest);
  for (int j = 1; j <= m; ++j)
    scan_nonfree(pi, sigma, axis_kind::horizontal, j, 1, n, delta, harvest);
  if (auto cert = detail::try_build_cut(harvest.pieces, n, m)) return *cert;
  throw cut_not_found();
}

}  // namespace frechet

#endif
