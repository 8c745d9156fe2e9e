#ifndef FRECHET_CURVE_HPP
#define FRECHET_CURVE_HPP

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// A position in the parameter space [1,n] x [1,m] of a curve pair.
/// All parameter-space coordinates in this library are 1-based continuous
/// indices: p = i + lambda refers to the point (1-lambda)*v_i + lambda*v_{i+1}.
struct param_pair {
  double p = 1.0;
  double q = 1.0;
};

inline bool operator==(param_pair a, param_pair b) {
  return a.p == b.p && a.q == b.q;
}

struct bounding_box {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::string msg, int line)
      : std::runtime_error(std::move(msg)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/**
 * A polygonal curve: vertex list plus the preprocessing data that every
 * decider component relies on. Prefix lengths make the length of any
 * subcurve between two vertices a constant-time difference, and the
 * bounding box feeds the cheapest positive filter and the query index.
 *
 * Vertices are addressed with 1-based indices throughout, matching the
 * parameter space. Curves are immutable after construction and can be
 * shared freely across threads.
 */
class curve {
 public:
  curve() = default;

  explicit curve(std::vector<point> vertices, std::string id = "")
      : verts_(std::move(vertices)), id_(std::move(id)) {
    if (verts_.empty()) throw parse_error("empty curve", 0);
    prefix_.resize(verts_.size());
    prefix_[0] = 0.0;
    box_.min_x = box_.max_x = verts_[0].x;
    box_.min_y = box_.max_y = verts_[0].y;
    for (std::size_t i = 1; i < verts_.size(); ++i) {
      prefix_[i] = prefix_[i - 1] + dist(verts_[i - 1], verts_[i]);
      box_.min_x = std::min(box_.min_x, verts_[i].x);
      box_.max_x = std::max(box_.max_x, verts_[i].x);
      box_.min_y = std::min(box_.min_y, verts_[i].y);
      box_.max_y = std::max(box_.max_y, verts_[i].y);
    }
  }

  int size() const { return static_cast<int>(verts_.size()); }

  /// 1-based vertex access, i in [1, size()].
  point vertex(int i) const { return verts_[static_cast<std::size_t>(i - 1)]; }

  /// Point at continuous index p in [1, size()]; integer p returns the
  /// vertex bitwise.
  point at(double p) const {
    const int i = index_floor(p);
    const double lambda = p - i;
    if (lambda == 0.0) return vertex(i);
    return interpolate({vertex(i), vertex(i + 1)}, lambda);
  }

  /// The segment from vertex i to vertex i+1, 1 <= i <= size()-1.
  segment seg(int i) const { return {vertex(i), vertex(i + 1)}; }

  /// Length of the subcurve between vertices i <= i2, as a prefix difference.
  double subcurve_len(int i, int i2) const {
    return prefix_[static_cast<std::size_t>(i2 - 1)] -
           prefix_[static_cast<std::size_t>(i - 1)];
  }

  double length() const { return prefix_.back(); }
  const bounding_box& bbox() const { return box_; }
  const std::string& id() const { return id_; }
  const std::vector<point>& vertices() const { return verts_; }

 private:
  // Floor of p clamped so that p == size() maps onto the last segment.
  int index_floor(double p) const {
    int i = static_cast<int>(p);
    if (i >= size()) i = size() > 1 ? size() - 1 : 1;
    if (i < 1) i = 1;
    return i;
  }

  std::vector<point> verts_;
  std::vector<double> prefix_;
  bounding_box box_;
  std::string id_;
};

namespace detail {

inline bool parse_two_reals(const std::string& line, double& x, double& y) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> x >> y)) return false;
  if (ss >> extra) return false;
  return std::isfinite(x) && std::isfinite(y);
}

inline bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses a plaintext curve: one "x y" pair per line, '#' comment lines
/// ignored, and an optional single non-numeric header line skipped.
/// Preprocessing (prefix lengths, bounding box) happens in the same pass.
inline curve parse_curve(std::istream& in, std::string id = "") {
  std::vector<point> pts;
  std::string line;
  int lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    double x, y;
    if (!detail::parse_two_reals(line, x, y)) {
      if (!seen_data) {
        seen_data = true;  // one non-numeric header line is allowed
        continue;
      }
      throw parse_error("malformed vertex at line " + std::to_string(lineno),
                        lineno);
    }
    seen_data = true;
    pts.push_back({x, y});
  }
  if (pts.empty()) throw parse_error("empty curve", lineno);
  return curve(std::move(pts), std::move(id));
}

inline curve load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open curve file: " + path, 0);
  return parse_curve(in, path);
}

/// Loads a dataset file: one curve-file path per line, relative to the
/// dataset file's directory. The path string doubles as the curve id.
inline std::vector<curve> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open dataset file: " + path, 0);
  std::string dir;
  const auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash + 1);

  std::vector<curve> out;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::blank_or_comment(line)) continue;
    // trim surrounding whitespace
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    std::string rel = line.substr(b, e - b + 1);
    std::ifstream cf(dir + rel);
    if (!cf) throw parse_error("cannot open curve file: " + dir + rel, 0);
    out.push_back(parse_curve(cf, rel));
  }
  return out;
}

}  // namespace frechet

#endif
