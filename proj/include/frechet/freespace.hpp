#ifndef FRECHET_FREESPACE_HPP
#define FRECHET_FREESPACE_HPP

#include <algorithm>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

/// Orientation of a boundary in the parameter space: a vertical boundary
/// fixes p and spans a q-range, a horizontal one fixes q and spans a p-range.
enum class axis_kind : unsigned char { vertical, horizontal };

/// An interval on one boundary line of the diagram. Empty iff lo > hi.
struct boundary_interval {
  axis_kind axis = axis_kind::vertical;
  double fixed = 0.0;
  double lo = 0.0;
  double hi = -1.0;

  bool empty() const { return lo > hi; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

inline boundary_interval empty_boundary(axis_kind axis, double fixed) {
  return {axis, fixed, 0.0, -1.0};
}

/// Collects non-free boundary pieces discovered while scanning boundaries.
/// Every recorded piece is strictly outside the free-space, which is what
/// the NO-certificate construction needs.
struct nonfree_log {
  bool enabled = false;
  std::vector<boundary_interval> pieces;

  void add(const boundary_interval& b) {
    if (!enabled || b.empty()) return;
    // Consecutive pieces of one scan often abut; keep them merged.
    if (!pieces.empty()) {
      boundary_interval& last = pieces.back();
      if (last.axis == b.axis && last.fixed == b.fixed && b.lo <= last.hi &&
          b.lo >= last.lo) {
        last.hi = std::max(last.hi, b.hi);
        return;
      }
    }
    pieces.push_back(b);
  }
};

inline bool is_free(const curve& pi, const curve& sigma, param_pair t,
                    double delta) {
  return sq_dist(pi.at(t.p), sigma.at(t.q)) <= delta * delta;
}

/// Upper-bound check: true implies d_F(a_{i..i2}, b_{j..j2}) <= delta.
/// Uses the midpoint-vertex bound; constant time via prefix lengths and
/// free of square roots (the distance term is compared in squared form).
inline bool heur_close(const curve& a, int i, int i2, const curve& b, int j,
                       int j2, double delta) {
  const int ic = (i + i2) / 2;
  const int jc = (j + j2) / 2;
  const double la = std::max(a.subcurve_len(i, ic), a.subcurve_len(ic, i2));
  const double lb = std::max(b.subcurve_len(j, jc), b.subcurve_len(jc, j2));
  const double slack = delta - la - lb;
  if (slack < 0.0) return false;
  return sq_dist(a.vertex(ic), b.vertex(jc)) <= slack * slack;
}

/// Lower-bound check: true implies every pair of points on the subcurves is
/// strictly farther than delta.
inline bool heur_far(const curve& a, int i, int i2, const curve& b, int j,
                     int j2, double delta) {
  const int ic = (i + i2) / 2;
  const int jc = (j + j2) / 2;
  const double la = std::max(a.subcurve_len(i, ic), a.subcurve_len(ic, i2));
  const double lb = std::max(b.subcurve_len(j, jc), b.subcurve_len(jc, j2));
  const double reach = delta + la + lb;
  return sq_dist(a.vertex(ic), b.vertex(jc)) > reach * reach;
}

// Point-versus-subcurve forms of the same bounds; the point side contributes
// no length term. These are what the boundary scans use.
inline bool heur_close_pt(point pt, const curve& c, int j, int j2,
                          double delta) {
  const int jc = (j + j2) / 2;
  const double lb = std::max(c.subcurve_len(j, jc), c.subcurve_len(jc, j2));
  const double slack = delta - lb;
  if (slack < 0.0) return false;
  return sq_dist(pt, c.vertex(jc)) <= slack * slack;
}

inline bool heur_far_pt(point pt, const curve& c, int j, int j2,
                        double delta) {
  const int jc = (j + j2) / 2;
  const double lb = std::max(c.subcurve_len(j, jc), c.subcurve_len(jc, j2));
  const double reach = delta + lb;
  return sq_dist(pt, c.vertex(jc)) > reach * reach;
}

namespace detail {

// Moves t toward `interior` until pred(t) holds. Tries a few ulp-scale
// steps first, then falls back to bisection against the interior point.
// Returns false when even the interior fails, i.e. the interval is
// numerically invisible.
template <class Pred>
bool refine_toward(double& t, double interior, Pred pred) {
  if (pred(t)) return true;
  const double dir = interior > t ? 1.0 : -1.0;
  double step = 4e-16 * std::max(1.0, std::abs(t));
  for (int k = 0; k < 3; ++k, step *= 64.0) {
    const double cand = t + dir * step;
    if ((cand - interior) * dir > 0.0) break;
    if (pred(cand)) {
      t = cand;
      return true;
    }
  }
  if (!pred(interior)) return false;
  double bad = t, good = interior;
  for (int it = 0; it < 60 && std::abs(good - bad) > 1e-18; ++it) {
    const double mid = 0.5 * (bad + good);
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  t = good;
  return true;
}

}  // namespace detail

namespace detail {

// Free part of segment `seg` of c against the delta-disk around `center`,
// reported in diagram coordinates [seg, seg+1]. The quadratic roots can
// land an ulp outside the free region, and converting a segment-local root
// into a diagram coordinate rounds once more, so the endpoints are pulled
// inward until they pass the exact closed test in the same form every
// consumer (including the certificate checker) evaluates: c.at(x).
inline bool segment_free_interval(point center, double delta, const curve& c,
                                  int seg, double& lo, double& hi) {
  const unit_interval raw = circle_segment_params(center, delta, c.seg(seg));
  if (raw.empty()) return false;
  lo = seg + raw.lo;
  hi = seg + raw.hi;
  const double d2 = delta * delta;
  const auto free_at = [&](double x) {
    return sq_dist(c.at(x), center) <= d2;
  };
  const double mid = 0.5 * (lo + hi);
  if (!refine_toward(lo, mid, free_at)) return false;
  if (!refine_toward(hi, mid, free_at)) return false;
  return lo <= hi;
}

}  // namespace detail

namespace detail {

// Describes one diagram boundary to scan: the fixed point on one curve and
// the vertex range on the other.
struct boundary_scan {
  point pt;
  const curve* scanned;
  axis_kind axis;
  double fixed;
  double d2;
};

inline boundary_scan make_scan(const curve& pi, const curve& sigma,
                               axis_kind axis, double fixed, double delta) {
  if (axis == axis_kind::vertical) return {pi.at(fixed), &sigma, axis, fixed, delta * delta};
  return {sigma.at(fixed), &pi, axis, fixed, delta * delta};
}

inline double complement_margin(double x) { return (std::abs(x) + 1.0) * 1e-13; }

// Records [lo,hi] (in scanned-curve coordinates) as a strictly non-free
// piece. Endpoints that sit on a computed circle-crossing are bumped into
// the open complement; the NO-certificate checker recomputes the same raw
// intersection, so a parameter-space bump makes the disjointness test
// deterministic. Vertex endpoints certified by the far heuristic or by an
// empty intersection need no bump.
inline void record_nonfree(const boundary_scan& bs, nonfree_log* rec,
                           double lo, double hi, bool bump_lo, bool bump_hi) {
  if (rec == nullptr || !rec->enabled) return;
  if (bump_lo) lo += complement_margin(lo);
  if (bump_hi) hi -= complement_margin(hi);
  if (lo > hi) return;
  rec->add({bs.axis, bs.fixed, lo, hi});
}

}  // namespace detail

struct simple_boundary_result {
  bool simple = true;
  boundary_interval free_part;
};

/**
 * Decides whether the boundary {fixed} x [from,to] (vertical) or
 * [from,to] x {fixed} (horizontal) meets the free-space in at most one
 * interval, and if so computes that interval.
 *
 * Long stretches are resolved by the heuristic close/far checks with an
 * adaptive step size that doubles on success and halves on failure; only
 * where both fail at step size one is the exact circle-segment intersection
 * computed. Bails out as soon as a second disjoint free interval appears.
 * Non-free pieces encountered on the way are recorded into `rec`.
 */
inline simple_boundary_result simple_boundary(const curve& pi,
                                              const curve& sigma,
                                              axis_kind axis, double fixed,
                                              int from, int to, double delta,
                                              nonfree_log* rec = nullptr) {
  const detail::boundary_scan bs =
      detail::make_scan(pi, sigma, axis, fixed, delta);
  const curve& c = *bs.scanned;

  simple_boundary_result res;
  res.free_part = empty_boundary(axis, fixed);

  if (from >= to) {
    if (sq_dist(bs.pt, c.vertex(from)) <= bs.d2) {
      res.free_part.lo = res.free_part.hi = from;
    } else {
      detail::record_nonfree(bs, rec, from, from, false, false);
    }
    return res;
  }

  if (heur_far_pt(bs.pt, c, from, to, delta)) {
    detail::record_nonfree(bs, rec, from, to, false, false);
    return res;  // simple, empty
  }
  if (heur_close_pt(bs.pt, c, from, to, delta)) {
    res.free_part.lo = from;
    res.free_part.hi = to;
    return res;
  }

  // Merged free intervals seen so far; a second disjoint one means the
  // boundary is not simple.
  double cur_lo = 0.0, cur_hi = -1.0;
  bool have_one = false;
  const auto push_free = [&](double lo, double hi) -> bool {
    if (have_one && cur_hi < 0.0) return false;  // unreachable guard
    if (have_one && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
      return true;
    }
    if (have_one) return false;  // second disjoint interval
    have_one = true;
    cur_lo = lo;
    cur_hi = hi;
    return true;
  };

  int j = from;
  int s = 1;
  while (j < to) {
    s = std::min(s, to - j);
    if (heur_close_pt(bs.pt, c, j, j + s, delta)) {
      if (!push_free(j, j + s)) {
        res.simple = false;
        return res;
      }
      j += s;
      s *= 2;
    } else if (heur_far_pt(bs.pt, c, j, j + s, delta)) {
      detail::record_nonfree(bs, rec, j, j + s, false, false);
      j += s;
      s *= 2;
    } else if (s > 1) {
      s /= 2;
    } else {
      const unit_interval raw = circle_segment_params(bs.pt, delta, c.seg(j));
      if (raw.empty()) {
        detail::record_nonfree(bs, rec, j, j + 1, false, false);
      } else {
        if (raw.lo > 0.0)
          detail::record_nonfree(bs, rec, j, j + raw.lo, false, true);
        if (raw.hi < 1.0)
          detail::record_nonfree(bs, rec, j + raw.hi, j + 1, true, false);
        double flo, fhi;
        if (detail::segment_free_interval(bs.pt, delta, c, j, flo, fhi) &&
            !push_free(flo, fhi)) {
          res.simple = false;
          return res;
        }
      }
      j += 1;
    }
  }

  if (have_one) {
    res.free_part.lo = cur_lo;
    res.free_part.hi = cur_hi;
  }
  return res;
}

/// Records every non-free piece of one boundary, never bailing out early.
/// This is the exhaustive variant of the scan inside simple_boundary; the
/// NO-certificate fallback uses it to complete a cut when the pieces found
/// during exploration alone do not connect.
inline void scan_nonfree(const curve& pi, const curve& sigma, axis_kind axis,
                         double fixed, int from, int to, double delta,
                         nonfree_log& rec) {
  const detail::boundary_scan bs =
      detail::make_scan(pi, sigma, axis, fixed, delta);
  const curve& c = *bs.scanned;
  if (from >= to) {
    if (sq_dist(bs.pt, c.vertex(from)) > bs.d2)
      detail::record_nonfree(bs, &rec, from, from, false, false);
    return;
  }
  int j = from;
  int s = 1;
  while (j < to) {
    s = std::min(s, to - j);
    if (heur_close_pt(bs.pt, c, j, j + s, delta)) {
      j += s;
      s *= 2;
    } else if (heur_far_pt(bs.pt, c, j, j + s, delta)) {
      detail::record_nonfree(bs, &rec, j, j + s, false, false);
      j += s;
      s *= 2;
    } else if (s > 1) {
      s /= 2;
    } else {
      const unit_interval raw = circle_segment_params(bs.pt, delta, c.seg(j));
      if (raw.empty()) {
        detail::record_nonfree(bs, &rec, j, j + 1, false, false);
      } else {
        if (raw.lo > 0.0)
          detail::record_nonfree(bs, &rec, j, j + raw.lo, false, true);
        if (raw.hi < 1.0)
          detail::record_nonfree(bs, &rec, j + raw.hi, j + 1, true, false);
      }
      j += 1;
    }
  }
}

/// True iff the whole boundary lies in the free-space. Since the free
/// parameters of each scanned segment form a convex set, this holds exactly
/// when every scanned vertex is within delta; the adaptive stepping skips
/// long stretches certified by the close heuristic.
inline bool boundary_fully_free(const curve& pi, const curve& sigma,
                                axis_kind axis, double fixed, int from, int to,
                                double delta) {
  const detail::boundary_scan bs =
      detail::make_scan(pi, sigma, axis, fixed, delta);
  const curve& c = *bs.scanned;
  if (sq_dist(bs.pt, c.vertex(from)) > bs.d2) return false;
  if (from >= to) return true;
  if (heur_close_pt(bs.pt, c, from, to, delta)) return true;
  if (heur_far_pt(bs.pt, c, from, to, delta)) return false;

  int j = from;
  int s = 1;
  while (j < to) {
    s = std::min(s, to - j);
    if (heur_close_pt(bs.pt, c, j, j + s, delta)) {
      j += s;
      s *= 2;
    } else if (s > 1) {
      s /= 2;
    } else {
      if (sq_dist(bs.pt, c.vertex(j + 1)) > bs.d2) return false;
      j += 1;
    }
  }
  return true;
}

struct cell_outputs {
  boundary_interval right;
  boundary_interval top;
};

/**
 * Constant-time propagation of reachability through the cell
 * [i,i+1] x [j,j+1]. The inputs are the reachable subsets of the cell's
 * left and bottom boundaries; since the free-space restricted to a cell is
 * convex, an output point is reachable iff it is free and dominates some
 * input point componentwise. Concretely the output's free interval is
 * clipped from below: a left-only input clips the right output at its
 * lowest q, a bottom-only input clips the top output at its lowest p, and
 * a non-empty opposite input imposes no clip at all.
 */
inline cell_outputs cell_propagate(const curve& pi, const curve& sigma, int i,
                                   int j, const boundary_interval& left_in,
                                   const boundary_interval& bottom_in,
                                   double delta) {
  cell_outputs out;
  out.right = empty_boundary(axis_kind::vertical, i + 1);
  out.top = empty_boundary(axis_kind::horizontal, j + 1);
  if (left_in.empty() && bottom_in.empty()) return out;

  double lo, hi;
  if (detail::segment_free_interval(pi.vertex(i + 1), delta, sigma, j, lo,
                                    hi)) {
    if (bottom_in.empty()) lo = std::max(lo, left_in.lo);
    if (lo <= hi) {
      out.right.lo = lo;
      out.right.hi = hi;
    }
  }
  if (detail::segment_free_interval(sigma.vertex(j + 1), delta, pi, i, lo,
                                    hi)) {
    if (left_in.empty()) lo = std::max(lo, bottom_in.lo);
    if (lo <= hi) {
      out.top.lo = lo;
      out.top.hi = hi;
    }
  }
  return out;
}

}  // namespace frechet

#endif
