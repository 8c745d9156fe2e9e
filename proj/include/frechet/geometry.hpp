#ifndef FRECHET_GEOMETRY_HPP
#define FRECHET_GEOMETRY_HPP

#include <cmath>

namespace frechet {

struct point {
  double x = 0.0;
  double y = 0.0;
};

inline point operator+(point a, point b) { return {a.x + b.x, a.y + b.y}; }
inline point operator-(point a, point b) { return {a.x - b.x, a.y - b.y}; }
inline point operator*(double s, point a) { return {s * a.x, s * a.y}; }
inline bool operator==(point a, point b) { return a.x == b.x && a.y == b.y; }

inline double sq_dist(point a, point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Euclidean distance. Most of the code compares squared distances against
/// squared thresholds instead; call this only where the actual length is
/// needed (prefix lengths, heuristic bounds).
inline double dist(point a, point b) { return std::sqrt(sq_dist(a, b)); }

struct segment {
  point start;
  point end;
};

/// Convex combination of the endpoints; t=0 gives start, t=1 gives end.
/// A degenerate segment (start == end) returns start for all t.
inline point interpolate(segment s, double t) {
  if (s.start == s.end) return s.start;
  return {(1.0 - t) * s.start.x + t * s.end.x,
          (1.0 - t) * s.start.y + t * s.end.y};
}

/// A sub-interval of [0,1], used for the parameter range of circle-segment
/// intersections. The default state is the designated empty interval.
struct unit_interval {
  double lo = 1.0;
  double hi = 0.0;

  bool empty() const { return lo > hi; }
  static unit_interval full() { return {0.0, 1.0}; }
  static unit_interval none() { return {}; }
};

namespace detail {
// A discriminant slightly below zero is treated as a grazing contact and
// yields a single-point interval; inclusion is the safe direction since the
// free-space is closed.
inline constexpr double TANGENCY_EPS = 1e-12;
}  // namespace detail

/// Computes {t in [0,1] : |interpolate(s,t) - center| <= radius}, which by
/// convexity of the disk is a single (possibly empty) interval. Containment
/// is closed. The square root is taken only after the discriminant is known
/// to be non-negative, so the common rejection path stays root-free.
inline unit_interval circle_segment_params(point center, double radius,
                                           segment s) {
  const double ux = s.end.x - s.start.x;
  const double uy = s.end.y - s.start.y;
  const double vx = s.start.x - center.x;
  const double vy = s.start.y - center.y;

  const double a = ux * ux + uy * uy;
  const double b = 2.0 * (ux * vx + uy * vy);
  const double c = vx * vx + vy * vy - radius * radius;

  if (a == 0.0) {
    // Degenerate segment: within radius or not, for every t.
    return c <= 0.0 ? unit_interval::full() : unit_interval::none();
  }

  double disc = b * b - 4.0 * a * c;
  if (disc < -detail::TANGENCY_EPS) return unit_interval::none();
  if (disc < 0.0) disc = 0.0;

  const double root = std::sqrt(disc);
  double t_lo = (-b - root) / (2.0 * a);
  double t_hi = (-b + root) / (2.0 * a);

  if (t_hi < 0.0 || t_lo > 1.0) return unit_interval::none();
  if (t_lo < 0.0) t_lo = 0.0;
  if (t_hi > 1.0) t_hi = 1.0;
  return {t_lo, t_hi};
}

}  // namespace frechet

#endif
