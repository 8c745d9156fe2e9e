#ifndef FRECHET_CERTIFICATE_HPP
#define FRECHET_CERTIFICATE_HPP

// Certificate representation, file format and the independent checker.
// The checker deliberately depends on nothing but the curve type and the
// geometric primitives, and verifies the certificate definitions literally;
// it shares no code path with the decider it audits.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

enum class cert_kind : unsigned char { yes, no };

struct certificate {
  cert_kind kind = cert_kind::yes;
  std::vector<param_pair> points;
};

struct check_result {
  bool accepted = true;
  std::string reason;       // empty when accepted
  std::size_t index = 0;    // step index the rejection refers to

  static check_result reject(std::string why, std::size_t at = 0) {
    return {false, std::move(why), at};
  }
};

namespace detail {

inline bool pt_free(const curve& pi, const curve& sigma, param_pair t,
                    double d2) {
  return sq_dist(pi.at(t.p), sigma.at(t.q)) <= d2;
}

// Non-freeness of {p} x [q1,q2] with q1,q2 inside one sigma-segment: the
// closed piece must not meet the free parameters of that segment.
inline bool piece_nonfree(point center, double delta, const curve& c,
                          double q1, double q2) {
  if (q1 > q2) std::swap(q1, q2);
  const int seg = std::min(static_cast<int>(std::floor(q1)), c.size() - 1);
  const unit_interval f = circle_segment_params(center, delta, c.seg(seg));
  if (f.empty()) return true;
  return f.hi < q1 - seg || f.lo > q2 - seg;
}

// The integer-augmented sequence q, ceil(q), ..., floor(q2), q2 from the
// certificate definitions, without duplicates.
inline std::vector<double> ladder(double a, double b) {
  std::vector<double> out{a};
  for (double t = std::ceil(a); t <= std::floor(b); t += 1.0)
    if (t != out.back()) out.push_back(t);
  if (b != out.back()) out.push_back(b);
  return out;
}

}  // namespace detail

/// Verifies a YES certificate: starts at (1,1), ends at (n,m), and every
/// step is an axis-parallel move whose integer-crossing points are all free
/// or a strictly increasing move inside a single cell with free endpoints.
inline check_result check_yes(const curve& pi, const curve& sigma,
                              double delta, const certificate& cert) {
  if (cert.kind != cert_kind::yes)
    return check_result::reject("not a YES certificate");
  const double d2 = delta * delta;
  const double n = pi.size(), m = sigma.size();
  const auto& ts = cert.points;
  if (ts.empty()) return check_result::reject("empty certificate");
  if (!(ts.front() == param_pair{1.0, 1.0}) ||
      !detail::pt_free(pi, sigma, ts.front(), d2))
    return check_result::reject("bad-start");
  if (!(ts.back() == param_pair{n, m}) ||
      !detail::pt_free(pi, sigma, ts.back(), d2))
    return check_result::reject("bad-end");

  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const param_pair a = ts[k], b = ts[k + 1];
    if (a.p == b.p && a.q < b.q) {
      for (double q : detail::ladder(a.q, b.q))
        if (!detail::pt_free(pi, sigma, {a.p, q}, d2))
          return check_result::reject("non-free-point", k);
    } else if (a.q == b.q && a.p < b.p) {
      for (double p : detail::ladder(a.p, b.p))
        if (!detail::pt_free(pi, sigma, {p, a.q}, d2))
          return check_result::reject("non-free-point", k);
    } else if (a.p < b.p && a.q < b.q) {
      const double ci = std::floor(a.p), cj = std::floor(a.q);
      if (b.p > ci + 1.0 || b.q > cj + 1.0)
        return check_result::reject("cell-violation", k);
      if (!detail::pt_free(pi, sigma, a, d2) ||
          !detail::pt_free(pi, sigma, b, d2))
        return check_result::reject("non-free-point", k);
    } else {
      return check_result::reject("non-monotone-step", k);
    }
  }
  return {};
}

/// Verifies a NO certificate: a cut from the bottom/right boundary to the
/// top/left boundary consisting of upward and leftward moves through
/// per-cell non-free pieces, plus unrestricted moves to the lower right.
inline check_result check_no(const curve& pi, const curve& sigma, double delta,
                             const certificate& cert) {
  if (cert.kind != cert_kind::no)
    return check_result::reject("not a NO certificate");
  const double d2 = delta * delta;
  const double n = pi.size(), m = sigma.size();
  const auto& ts = cert.points;
  if (ts.empty()) return check_result::reject("empty certificate");
  if (!(ts.front().q == 1.0 || ts.front().p == n) ||
      detail::pt_free(pi, sigma, ts.front(), d2))
    return check_result::reject("bad-start");
  if (!(ts.back().q == m || ts.back().p == 1.0) ||
      detail::pt_free(pi, sigma, ts.back(), d2))
    return check_result::reject("bad-end");

  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const param_pair a = ts[k], b = ts[k + 1];
    if (a.p == b.p && b.q > a.q) {
      const point center = pi.at(a.p);
      const auto rungs = detail::ladder(a.q, b.q);
      for (std::size_t r = 0; r + 1 < rungs.size(); ++r)
        if (!detail::piece_nonfree(center, delta, sigma, rungs[r],
                                   rungs[r + 1]))
          return check_result::reject("free-piece", k);
    } else if (a.q == b.q && b.p < a.p) {
      const point center = sigma.at(a.q);
      const auto rungs = detail::ladder(b.p, a.p);
      for (std::size_t r = 0; r + 1 < rungs.size(); ++r)
        if (!detail::piece_nonfree(center, delta, pi, rungs[r], rungs[r + 1]))
          return check_result::reject("free-piece", k);
    } else if (b.p >= a.p && b.q <= a.q) {
      // move to the lower right: always permitted
    } else {
      return check_result::reject("bad-step", k);
    }
  }
  return {};
}

inline check_result check_certificate(const curve& pi, const curve& sigma,
                                      double delta, const certificate& cert) {
  return cert.kind == cert_kind::yes ? check_yes(pi, sigma, delta, cert)
                                     : check_no(pi, sigma, delta, cert);
}

// ---- certificate files ----------------------------------------------------
// line 1: YES | NO
// line 2: n m delta
// then one "p q" pair per line, full-precision decimals.

struct cert_file {
  certificate cert;
  int n = 0, m = 0;
  double delta = 0.0;
};

inline void write_certificate(std::ostream& out, const certificate& cert,
                              int n, int m, double delta) {
  char buf[160];
  out << (cert.kind == cert_kind::yes ? "YES" : "NO") << '\n';
  std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", n, m, delta);
  out << buf;
  for (const param_pair& t : cert.points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", t.p, t.q);
    out << buf;
  }
}

inline cert_file read_certificate(std::istream& in) {
  cert_file f;
  std::string head;
  if (!(in >> head)) throw parse_error("empty certificate file", 1);
  if (head == "YES")
    f.cert.kind = cert_kind::yes;
  else if (head == "NO")
    f.cert.kind = cert_kind::no;
  else
    throw parse_error("certificate must start with YES or NO", 1);
  if (!(in >> f.n >> f.m >> f.delta))
    throw parse_error("bad certificate header", 2);
  double p, q;
  while (in >> p >> q) f.cert.points.push_back({p, q});
  return f;
}

}  // namespace frechet

#endif
