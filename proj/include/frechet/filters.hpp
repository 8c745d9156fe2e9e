#ifndef FRECHET_FILTERS_HPP
#define FRECHET_FILTERS_HPP

#include <limits>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/freespace.hpp"

namespace frechet {

enum class filter_outcome : unsigned char { close, far, unknown };

/// Result of one filter run. A close verdict carries the visited positions,
/// which already form a YES-certificate skeleton; a far verdict names a
/// vertex that is far from the entire other curve.
struct filter_result {
  filter_outcome outcome = filter_outcome::unknown;
  std::vector<param_pair> yes_witness;
  axis_kind far_axis = axis_kind::vertical;  // vertical: pi vertex far from sigma
  int far_vertex = 0;
  param_pair stuck{1.0, 1.0};
  long iterations = 0;
};

/// Largest possible distance between a point of one box and a point of the
/// other (attained at corners).
inline double bbox_farthest_sq(const bounding_box& a, const bounding_box& b) {
  const double dx = std::max(a.max_x - b.min_x, b.max_x - a.min_x);
  const double dy = std::max(a.max_y - b.min_y, b.max_y - a.min_y);
  return dx * dx + dy * dy;
}

/// Positive filter: if even the farthest bounding-box corners are within
/// delta, the free-space is completely free and the L-shaped traversal
/// through (n,1) is a valid witness. Never answers far.
inline filter_result bbox_filter(const curve& pi, const curve& sigma,
                                 double delta) {
  filter_result r;
  if (bbox_farthest_sq(pi.bbox(), sigma.bbox()) <= delta * delta) {
    r.outcome = filter_outcome::close;
    const double n = pi.size(), m = sigma.size();
    r.yes_witness = {{1.0, 1.0}, {n, 1.0}, {n, m}};
  }
  return r;
}

namespace detail {

// Candidate step for the greedy/equal-time loops.
struct step_candidate {
  int i = 0, j = 0;
  bool valid = false;
  double sq = std::numeric_limits<double>::infinity();
};

inline step_candidate unit_step(const curve& pi, const curve& sigma, int i,
                                int j, double d2) {
  step_candidate c{i, j};
  if (i > pi.size() || j > sigma.size()) return c;
  c.sq = sq_dist(pi.vertex(i), sigma.vertex(j));
  c.valid = c.sq <= d2;
  return c;
}

inline step_candidate swept_step(const curve& pi, const curve& sigma, int i0,
                                 int j0, int i, int j, double delta) {
  step_candidate c{i, j};
  if (i > pi.size() || j > sigma.size()) return c;
  if (!heur_close(pi, i0, i, sigma, j0, j, delta)) return c;
  c.sq = sq_dist(pi.vertex(i), sigma.vertex(j));
  c.valid = true;
  return c;
}

}  // namespace detail

/**
 * Greedy positive filter with adaptive step size. Walks from (1,1) toward
 * (n,m), always taking the valid step that minimizes the current vertex
 * distance; the step size doubles after a successful step and halves after
 * a failed one. Unit steps are validated by the freeness of the target
 * vertex pair, larger steps by the close heuristic over the swept
 * subcurves, so the visited sequence is a YES certificate as it stands.
 * Returns unknown (with the stuck position) when no unit step is possible.
 *
 * Requires the endpoint pairs to be known close.
 */
inline filter_result greedy_filter(const curve& pi, const curve& sigma,
                                   double delta) {
  const int n = pi.size();
  const int m = sigma.size();
  const double d2 = delta * delta;
  filter_result r;
  int i = 1, j = 1, s = 1;
  std::vector<param_pair> visited{{1.0, 1.0}};
  const long limit = 4L * (n + m);

  while (i < n || j < m) {
    if (++r.iterations > limit) {
      r.stuck = {static_cast<double>(i), static_cast<double>(j)};
      return r;  // give up; the bound certifies the O(n+m) step claim
    }
    detail::step_candidate best;
    if (s == 1) {
      // preference on ties: diagonal, then the curve with more slack left
      detail::step_candidate cand[3];
      cand[0] = detail::unit_step(pi, sigma, i + 1, j + 1, d2);
      if (n - i >= m - j) {
        cand[1] = detail::unit_step(pi, sigma, i + 1, j, d2);
        cand[2] = detail::unit_step(pi, sigma, i, j + 1, d2);
      } else {
        cand[1] = detail::unit_step(pi, sigma, i, j + 1, d2);
        cand[2] = detail::unit_step(pi, sigma, i + 1, j, d2);
      }
      for (const auto& c : cand)
        if (c.valid && c.sq < best.sq) best = c;
    } else {
      const auto a = detail::swept_step(pi, sigma, i, j, i + s, j, delta);
      const auto b = detail::swept_step(pi, sigma, i, j, i, j + s, delta);
      if (n - i >= m - j) {
        if (a.valid) best = a;
        if (b.valid && b.sq < best.sq) best = b;
      } else {
        if (b.valid) best = b;
        if (a.valid && a.sq < best.sq) best = a;
      }
    }
    if (!best.valid) {
      if (s == 1) {
        r.stuck = {static_cast<double>(i), static_cast<double>(j)};
        return r;  // unknown
      }
      s /= 2;
      continue;
    }
    i = best.i;
    j = best.j;
    visited.push_back(
        {static_cast<double>(i), static_cast<double>(j)});
    s *= 2;
  }
  r.outcome = filter_outcome::close;
  r.yes_witness = std::move(visited);
  return r;
}

/**
 * Equal-time variant of the greedy filter: above step size one the only
 * candidate is (i+s, j + floor((m-j)/(n-i) * s)), keeping the traversal
 * near the diagonal. Big steps enter the witness as the two-leg sequence
 * (i,j),(i+s,j),(i+s,j+s'), which the swept close-check covers.
 */
inline filter_result equal_time_filter(const curve& pi, const curve& sigma,
                                       double delta) {
  const int n = pi.size();
  const int m = sigma.size();
  const double d2 = delta * delta;
  filter_result r;
  int i = 1, j = 1, s = 1;
  std::vector<param_pair> visited{{1.0, 1.0}};
  const long limit = 4L * (n + m);

  while (i < n || j < m) {
    if (++r.iterations > limit) {
      r.stuck = {static_cast<double>(i), static_cast<double>(j)};
      return r;
    }
    if (s == 1) {
      detail::step_candidate best;
      detail::step_candidate cand[3];
      cand[0] = detail::unit_step(pi, sigma, i + 1, j + 1, d2);
      if (n - i >= m - j) {
        cand[1] = detail::unit_step(pi, sigma, i + 1, j, d2);
        cand[2] = detail::unit_step(pi, sigma, i, j + 1, d2);
      } else {
        cand[1] = detail::unit_step(pi, sigma, i, j + 1, d2);
        cand[2] = detail::unit_step(pi, sigma, i + 1, j, d2);
      }
      for (const auto& c : cand)
        if (c.valid && c.sq < best.sq) best = c;
      if (!best.valid) {
        r.stuck = {static_cast<double>(i), static_cast<double>(j)};
        return r;
      }
      i = best.i;
      j = best.j;
      visited.push_back({static_cast<double>(i), static_cast<double>(j)});
      s *= 2;
      continue;
    }
    // single equal-time candidate; vertical when pi is exhausted
    int ti, tj;
    if (i >= n) {
      ti = i;
      tj = j + s;
    } else {
      ti = i + s;
      tj = j + static_cast<int>(static_cast<long long>(m - j) * s / (n - i));
    }
    bool ok = ti <= n && tj <= m && (ti > i || tj > j) &&
              heur_close(pi, i, ti, sigma, j, tj, delta);
    if (!ok) {
      s /= 2;
      continue;
    }
    if (ti > i && tj > j)
      visited.push_back({static_cast<double>(ti), static_cast<double>(j)});
    i = ti;
    j = tj;
    visited.push_back({static_cast<double>(i), static_cast<double>(j)});
    s *= 2;
  }
  r.outcome = filter_outcome::close;
  r.yes_witness = std::move(visited);
  return r;
}

/**
 * Negative filter. Starting from the position where the greedy filter got
 * stuck, probes vertices pi_{i+s} for s = 1,2,4,... and reports far as soon
 * as one of them has an entirely non-free column, i.e. is farther than
 * delta from every point of sigma; then the same with the roles swapped.
 * Boundary scans record their non-free pieces into `rec`.
 */
inline filter_result negative_filter(const curve& pi, const curve& sigma,
                                     double delta, param_pair stuck,
                                     nonfree_log* rec = nullptr) {
  const int n = pi.size();
  const int m = sigma.size();
  filter_result r;
  const int i0 = static_cast<int>(stuck.p);
  const int j0 = static_cast<int>(stuck.q);
  for (int s = 1; i0 + s <= n; s *= 2) {
    const auto sb = simple_boundary(pi, sigma, axis_kind::vertical, i0 + s, 1,
                                    m, delta, rec);
    if (sb.simple && sb.free_part.empty()) {
      r.outcome = filter_outcome::far;
      r.far_axis = axis_kind::vertical;
      r.far_vertex = i0 + s;
      return r;
    }
  }
  for (int s = 1; j0 + s <= m; s *= 2) {
    const auto sb = simple_boundary(pi, sigma, axis_kind::horizontal, j0 + s,
                                    1, n, delta, rec);
    if (sb.simple && sb.free_part.empty()) {
      r.outcome = filter_outcome::far;
      r.far_axis = axis_kind::horizontal;
      r.far_vertex = j0 + s;
      return r;
    }
  }
  return r;
}

}  // namespace frechet

#endif
