#ifndef FRECHET_COMPLETE_DECIDER_HPP
#define FRECHET_COMPLETE_DECIDER_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/freespace.hpp"

namespace frechet {

/// Why an interval of reachable points is reachable; drives the backward
/// walk that reconstructs YES certificates.
enum class pred_kind : unsigned char {
  origin,   // free prefix of the diagram's first column/row
  cell,     // cell propagation from an input interval
  rule3b,   // simple boundary whose free part starts at a reachable corner
  rule3c,   // simple boundary reached through a free column/row in the box
  merge,    // same-boundary link: concatenation seam or range restriction
};

struct reach_interval {
  axis_kind axis;
  double fixed;
  double lo, hi;
  int32_t pred;  // arena index of the responsible interval, -1 at the origin
  pred_kind kind;

  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Reachable subset of one boundary: sorted, pairwise disjoint intervals,
/// stored as indices into the exploration log's arena.
struct reach_set {
  std::vector<int32_t> ids;
  bool empty() const { return ids.empty(); }
};

/// Pruning rules II..IV can be disabled individually (rule I, empty inputs,
/// is what makes the recursion terminate early at all and stays on).
struct rule_mask {
  bool shrink = true;         // rule II
  bool simple_empty = true;   // rule IIIa
  bool simple_corner = true;  // rule IIIb
  bool simple_inside = true;  // rule IIIc
  bool diagram_edge = true;   // rule IV
};

struct box_trace {
  int i, i2, j, j2;
  std::string rule;
};

/**
 * Scratch state of one complete-decider run: the interval arena that backs
 * every reach_set, the non-free pieces collected for NO certificates, the
 * boxes-explored statistic, and the root outputs the verdict is read from.
 */
struct exploration_log {
  std::vector<reach_interval> arena;
  nonfree_log nonfree;
  long boxes_visited = 0;
  int max_depth = 0;
  bool collect_trace = false;
  std::vector<box_trace> trace;

  reach_set root_top, root_right;
  bool top_skipped = false;
  bool right_skipped = false;

  int32_t add(axis_kind axis, double fixed, double lo, double hi, int32_t pred,
              pred_kind kind) {
    arena.push_back({axis, fixed, lo, hi, pred, kind});
    return static_cast<int32_t>(arena.size()) - 1;
  }
  const reach_interval& iv(int32_t id) const {
    return arena[static_cast<std::size_t>(id)];
  }
};

enum class far_reason : unsigned char {
  none,
  start_nonfree,
  end_nonfree,
  point_vs_curve,
  explored,
};

struct complete_result {
  bool close = false;
  far_reason why = far_reason::none;
  int32_t goal_interval = -1;  // arena id of the interval containing (n,m)
  param_pair far_witness{};    // offending point for the degenerate far cases
};

namespace detail {

class box_explorer {
 public:
  box_explorer(const curve& pi, const curve& sigma, double delta,
               exploration_log& log, rule_mask rules)
      : pi_(pi),
        sig_(sigma),
        delta_(delta),
        log_(log),
        rules_(rules),
        n_(pi.size()),
        m_(sigma.size()) {}

  struct output {
    reach_set set;
    bool skipped = false;  // rule IV: deliberately not computed, never read
  };
  struct box_out {
    output right;
    output top;
  };

  /// Reachable free prefix of the diagram's first column (vertical) or
  /// first row (horizontal), as the single origin interval.
  reach_set root_input(axis_kind axis) {
    const boundary_scan bs = make_scan(pi_, sig_, axis, 1.0, delta_);
    const curve& c = *bs.scanned;
    const int count = c.size();
    double reach_hi = 1.0;
    int j = 1;
    int s = 1;
    while (j < count) {
      s = std::min(s, count - j);
      if (s > 1) {
        if (heur_close_pt(bs.pt, c, j, j + s, delta_)) {
          reach_hi = j + s;
          j += s;
          s *= 2;
        } else {
          s /= 2;
        }
        continue;
      }
      const unit_interval raw = circle_segment_params(bs.pt, delta_, c.seg(j));
      if (log_.nonfree.enabled) {
        if (raw.empty()) {
          record_nonfree(bs, &log_.nonfree, j, j + 1, false, false);
        } else {
          if (raw.lo > 0.0)
            record_nonfree(bs, &log_.nonfree, j, j + raw.lo, false, true);
          if (raw.hi < 1.0)
            record_nonfree(bs, &log_.nonfree, j + raw.hi, j + 1, true, false);
        }
      }
      double flo, fhi;
      if (segment_free_interval(bs.pt, delta_, c, j, flo, fhi) &&
          flo == static_cast<double>(j)) {
        reach_hi = fhi;
        if (fhi == static_cast<double>(j + 1)) {
          j += 1;
          s *= 2;
          continue;
        }
      }
      break;
    }
    reach_set rs;
    rs.ids.push_back(log_.add(axis, 1.0, 1.0, reach_hi, -1, pred_kind::origin));
    return rs;
  }

  box_out explore(int i, int i2, int j, int j2, const reach_set& left_in,
                  const reach_set& bottom_in,
                  std::optional<reach_set> known_right,
                  std::optional<reach_set> known_top, int depth) {
    ++log_.boxes_visited;
    log_.max_depth = std::max(log_.max_depth, depth);
    std::string label;
    const auto tag = [&](const char* r) {
      if (!log_.collect_trace) return;
      if (!label.empty()) label += '+';
      label += r;
    };

    box_out out;
    out.right.set = {};
    out.top.set = {};

    // Rule II: one input empty and the other starting late lets us move the
    // opposing side of the box up to the first reachable coordinate. The
    // shrink backs off to a power-of-two height so later splits stay on the
    // same grid they would have used anyway; a free-position shrink saves
    // the same boxes but reshuffles the split tree noticeably.
    if (rules_.shrink && !(i2 - i == 1 && j2 - j == 1)) {
      const auto aligned = [](int lo, int hi, int cut) {
        int h = 1;
        while (h < hi - cut) h *= 2;
        return std::max(lo, hi - h);
      };
      if (bottom_in.empty() && !left_in.empty()) {
        const double jmin = log_.iv(left_in.ids.front()).lo;
        const int jf = aligned(
            j, j2, std::min(static_cast<int>(std::floor(jmin)), j2 - 1));
        if (jf > j) {
          j = jf;
          if (known_right) *known_right = restrict(*known_right, j, j2);
          tag("II");
        }
      } else if (left_in.empty() && !bottom_in.empty()) {
        const double imin = log_.iv(bottom_in.ids.front()).lo;
        const int ifl = aligned(
            i, i2, std::min(static_cast<int>(std::floor(imin)), i2 - 1));
        if (ifl > i) {
          i = ifl;
          if (known_top) *known_top = restrict(*known_top, i, i2);
          tag("II");
        }
      }
    }

    if (i2 - i == 1 && j2 - j == 1) {
      out = do_cell(i, j, left_in, bottom_in, known_right, known_top);
      tag("cell");
      trace(i, i2, j, j2, label);
      return out;
    }

    // Rule I: nothing reachable enters, nothing reachable leaves.
    if (left_in.empty() && bottom_in.empty()) {
      if (known_right) out.right.set = *known_right;
      if (known_top) out.top.set = *known_top;
      tag("I");
      trace(i, i2, j, j2, label);
      return out;
    }

    bool right_done = false;
    bool top_done = false;
    if (known_right) {
      out.right.set = *known_right;
      right_done = true;
    }
    if (known_top) {
      out.top.set = *known_top;
      top_done = true;
    }

    // Rule III on the top boundary.
    if (!top_done) {
      const auto sb = simple_boundary(pi_, sig_, axis_kind::horizontal, j2, i,
                                      i2, delta_, &log_.nonfree);
      if (sb.simple) {
        const boundary_interval& f = sb.free_part;
        if (f.empty()) {
          if (rules_.simple_empty) {
            top_done = true;
            tag("IIIa");
          }
        } else if (f.lo == static_cast<double>(i)) {
          // free part starts at the top-left corner; reachable iff the left
          // input reaches all the way up
          if (rules_.simple_corner && !left_in.empty() &&
              log_.iv(left_in.ids.back()).hi == static_cast<double>(j2)) {
            out.top.set.ids = {log_.add(axis_kind::horizontal, j2, f.lo, f.hi,
                                        left_in.ids.back(), pred_kind::rule3b)};
            top_done = true;
            tag("IIIb");
          }
        } else if (rules_.simple_inside) {
          // try to reach the first free point straight up from the bottom
          const int32_t carrier = interval_containing(bottom_in, f.lo);
          if (carrier >= 0 &&
              boundary_fully_free(pi_, sig_, axis_kind::vertical, f.lo, j, j2,
                                  delta_)) {
            out.top.set.ids = {log_.add(axis_kind::horizontal, j2, f.lo, f.hi,
                                        carrier, pred_kind::rule3c)};
            top_done = true;
            tag("IIIc");
          }
        }
      }
    }

    // Rule III on the right boundary (top<->right, bottom<->left swapped).
    if (!right_done) {
      const auto sb = simple_boundary(pi_, sig_, axis_kind::vertical, i2, j, j2,
                                      delta_, &log_.nonfree);
      if (sb.simple) {
        const boundary_interval& f = sb.free_part;
        if (f.empty()) {
          if (rules_.simple_empty) {
            right_done = true;
            tag("IIIa");
          }
        } else if (f.lo == static_cast<double>(j)) {
          if (rules_.simple_corner && !bottom_in.empty() &&
              log_.iv(bottom_in.ids.back()).hi == static_cast<double>(i2)) {
            out.right.set.ids = {log_.add(axis_kind::vertical, i2, f.lo, f.hi,
                                          bottom_in.ids.back(),
                                          pred_kind::rule3b)};
            right_done = true;
            tag("IIIb");
          }
        } else if (rules_.simple_inside) {
          const int32_t carrier = interval_containing(left_in, f.lo);
          if (carrier >= 0 &&
              boundary_fully_free(pi_, sig_, axis_kind::horizontal, f.lo, i, i2,
                                  delta_)) {
            out.right.set.ids = {log_.add(axis_kind::vertical, i2, f.lo, f.hi,
                                          carrier, pred_kind::rule3c)};
            right_done = true;
            tag("IIIc");
          }
        }
      }
    }

    // Rule IV: an output on the diagram edge is only ever read for the final
    // corner check; once the opposite output is known the box is done.
    if (rules_.diagram_edge) {
      if (!top_done && j2 == m_ && right_done) {
        out.top.skipped = true;
        top_done = true;
        tag("IV");
      } else if (!right_done && i2 == n_ && top_done) {
        out.right.skipped = true;
        right_done = true;
        tag("IV");
      }
    }

    if (!top_done || !right_done) {
      tag("split");
      if (j2 - j > i2 - i) {
        const int jm = (j + j2) / 2;
        box_out b1 = explore(
            i, i2, j, jm, restrict(left_in, j, jm), bottom_in,
            right_done ? std::optional<reach_set>(restrict(out.right.set, j, jm))
                       : std::nullopt,
            std::nullopt, depth + 1);
        assert(!b1.top.skipped);
        box_out b2 = explore(
            i, i2, jm, j2, restrict(left_in, jm, j2), b1.top.set,
            right_done
                ? std::optional<reach_set>(restrict(out.right.set, jm, j2))
                : std::nullopt,
            top_done ? std::optional<reach_set>(out.top.set) : std::nullopt,
            depth + 1);
        if (!right_done) {
          out.right.set = concat_merge(b1.right.set, b2.right.set);
          out.right.skipped = b1.right.skipped || b2.right.skipped;
        }
        if (!top_done) out.top = b2.top;
      } else {
        const int im = (i + i2) / 2;
        box_out b1 = explore(
            i, im, j, j2, left_in, restrict(bottom_in, i, im), std::nullopt,
            top_done ? std::optional<reach_set>(restrict(out.top.set, i, im))
                     : std::nullopt,
            depth + 1);
        assert(!b1.right.skipped);
        box_out b2 = explore(
            im, i2, j, j2, b1.right.set, restrict(bottom_in, im, i2),
            right_done ? std::optional<reach_set>(out.right.set) : std::nullopt,
            top_done ? std::optional<reach_set>(restrict(out.top.set, im, i2))
                     : std::nullopt,
            depth + 1);
        if (!top_done) {
          out.top.set = concat_merge(b1.top.set, b2.top.set);
          out.top.skipped = b1.top.skipped || b2.top.skipped;
        }
        if (!right_done) out.right = b2.right;
      }
    }
    trace(i, i2, j, j2, label);
    return out;
  }

 private:
  box_out do_cell(int i, int j, const reach_set& left_in,
                  const reach_set& bottom_in,
                  const std::optional<reach_set>& known_right,
                  const std::optional<reach_set>& known_top) {
    box_out out;
    if (known_right && known_top) {
      out.right.set = *known_right;
      out.top.set = *known_top;
      return out;
    }
    const boundary_interval li = hull(left_in, axis_kind::vertical, i);
    const boundary_interval bi = hull(bottom_in, axis_kind::horizontal, j);
    const cell_outputs co = cell_propagate(pi_, sig_, i, j, li, bi, delta_);
    if (known_right) {
      out.right.set = *known_right;
    } else if (!co.right.empty()) {
      const int32_t pred =
          !bottom_in.empty() ? bottom_in.ids.front() : left_in.ids.front();
      out.right.set.ids = {log_.add(axis_kind::vertical, i + 1, co.right.lo,
                                    co.right.hi, pred, pred_kind::cell)};
    }
    if (known_top) {
      out.top.set = *known_top;
    } else if (!co.top.empty()) {
      const int32_t pred =
          !left_in.empty() ? left_in.ids.front() : bottom_in.ids.front();
      out.top.set.ids = {log_.add(axis_kind::horizontal, j + 1, co.top.lo,
                                  co.top.hi, pred, pred_kind::cell)};
    }
    return out;
  }

  // Only the lower end and emptiness of a cell input are ever consumed, so
  // collapsing a multi-interval set to its hull is safe here.
  boundary_interval hull(const reach_set& s, axis_kind ax, int fixed) const {
    if (s.empty()) return empty_boundary(ax, fixed);
    return {ax, static_cast<double>(fixed), log_.iv(s.ids.front()).lo,
            log_.iv(s.ids.back()).hi};
  }

  reach_set restrict(const reach_set& s, double a, double b) {
    reach_set out;
    for (int32_t id : s.ids) {
      const reach_interval r = log_.iv(id);
      if (r.hi < a || r.lo > b) continue;
      if (r.lo >= a && r.hi <= b) {
        out.ids.push_back(id);
        continue;
      }
      const double lo = std::max(r.lo, a);
      const double hi = std::min(r.hi, b);
      if (lo > hi) continue;
      out.ids.push_back(log_.add(r.axis, r.fixed, lo, hi, id, pred_kind::merge));
    }
    return out;
  }

  // Appends b's intervals after a's; pieces meeting at a split coordinate
  // are fused, keeping the left piece as the responsible predecessor.
  reach_set concat_merge(reach_set a, const reach_set& b) {
    for (int32_t id : b.ids) {
      if (!a.ids.empty()) {
        const reach_interval prev = log_.iv(a.ids.back());
        const reach_interval cur = log_.iv(id);
        if (cur.lo <= prev.hi) {
          a.ids.back() = log_.add(prev.axis, prev.fixed, prev.lo,
                                  std::max(prev.hi, cur.hi), a.ids.back(),
                                  pred_kind::merge);
          continue;
        }
      }
      a.ids.push_back(id);
    }
    return a;
  }

  int32_t interval_containing(const reach_set& s, double t) const {
    for (int32_t id : s.ids) {
      if (log_.iv(id).contains(t)) return id;
    }
    return -1;
  }

  void trace(int i, int i2, int j, int j2, std::string& label) {
    if (!log_.collect_trace) return;
    if (label.empty()) label = "known";
    log_.trace.push_back({i, i2, j, j2, std::move(label)});
  }

  const curve& pi_;
  const curve& sig_;
  double delta_;
  exploration_log& log_;
  rule_mask rules_;
  int n_, m_;
};

}  // namespace detail

/**
 * Complete decider: recursive free-space exploration with pruning.
 * Returns close iff (n,m) is reachable from (1,1) by a monotone path in the
 * free-space. The log keeps everything a certificate needs afterwards:
 * predecessor-tagged reach intervals for YES, non-free pieces for NO.
 */
inline complete_result complete_decide(const curve& pi, const curve& sigma,
                                       double delta, exploration_log& log,
                                       rule_mask rules = {}) {
  complete_result res;
  const int n = pi.size();
  const int m = sigma.size();
  const double d2 = delta * delta;

  if (sq_dist(pi.vertex(1), sigma.vertex(1)) > d2) {
    log.boxes_visited = 1;
    res.why = far_reason::start_nonfree;
    res.far_witness = {1.0, 1.0};
    return res;
  }
  if (sq_dist(pi.vertex(n), sigma.vertex(m)) > d2) {
    log.boxes_visited = 1;
    res.why = far_reason::end_nonfree;
    res.far_witness = {static_cast<double>(n), static_cast<double>(m)};
    return res;
  }

  if (n == 1 || m == 1) {
    // Point against curve. Within each segment the free parameters form a
    // convex set, so the pair is close iff every vertex is free; a far
    // vertex yields a one-point certificate on its own.
    log.boxes_visited = 1;
    const bool pi_is_point = (n == 1);
    const curve& c = pi_is_point ? sigma : pi;
    const point pt = pi_is_point ? pi.vertex(1) : sigma.vertex(1);
    for (int k = 1; k <= c.size(); ++k) {
      if (sq_dist(pt, c.vertex(k)) > d2) {
        res.why = far_reason::point_vs_curve;
        res.far_witness = pi_is_point
                              ? param_pair{1.0, static_cast<double>(k)}
                              : param_pair{static_cast<double>(k), 1.0};
        return res;
      }
    }
    res.close = true;
    return res;
  }

  detail::box_explorer ex(pi, sigma, delta, log, rules);
  const reach_set left0 = ex.root_input(axis_kind::vertical);
  const reach_set bottom0 = ex.root_input(axis_kind::horizontal);
  const auto out =
      ex.explore(1, n, 1, m, left0, bottom0, std::nullopt, std::nullopt, 1);

  log.root_right = out.right.set;
  log.root_top = out.top.set;
  log.right_skipped = out.right.skipped;
  log.top_skipped = out.top.skipped;

  // The corner never falls into a rule-IV-skipped chunk, so membership in
  // the computed pieces is decisive.
  int32_t goal = -1;
  for (int32_t id : out.right.set.ids) {
    if (log.iv(id).contains(static_cast<double>(m))) goal = id;
  }
  if (goal < 0) {
    for (int32_t id : out.top.set.ids) {
      if (log.iv(id).contains(static_cast<double>(n))) goal = id;
    }
  }
  if (goal >= 0) {
    res.close = true;
    res.goal_interval = goal;
  } else {
    res.why = far_reason::explored;
  }
  return res;
}

}  // namespace frechet

#endif
