#ifndef FRECHET_BENCH_HPP
#define FRECHET_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/decider.hpp"
#include "frechet/query.hpp"

namespace frechet {

class bench_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- reference oracle -------------------------------------------------

/**
 * The classic full dynamic program over all cells: exhaustive reachability
 * propagation column by column, no pruning, no shared propagation code with
 * the recursive decider. This is the project's ground-truth oracle.
 */
inline bool naive_dp_decide(const curve& pi, const curve& sigma,
                            double delta) {
  const int n = pi.size();
  const int m = sigma.size();
  const double d2 = delta * delta;
  if (sq_dist(pi.vertex(1), sigma.vertex(1)) > d2) return false;
  if (sq_dist(pi.vertex(n), sigma.vertex(m)) > d2) return false;
  if (n == 1 && m == 1) return true;
  if (n == 1 || m == 1) {
    const curve& c = n == 1 ? sigma : pi;
    const point pt = n == 1 ? pi.vertex(1) : sigma.vertex(1);
    for (int k = 1; k <= c.size(); ++k)
      if (sq_dist(pt, c.vertex(k)) > d2) return false;
    return true;
  }

  struct iv {
    double lo = 1.0, hi = 0.0;
    bool empty() const { return lo > hi; }
  };

  // contiguous free prefix of the first column / row
  const auto prefix = [&](const point pt, const curve& c) {
    double reach = 1.0;
    for (int k = 1; k < c.size(); ++k) {
      const unit_interval u = circle_segment_params(pt, delta, c.seg(k));
      if (u.empty() || u.lo > 0.0) break;
      reach = k + u.hi;
      if (u.hi < 1.0) break;
    }
    return reach;
  };
  const double qmax = prefix(pi.vertex(1), sigma);
  const double pmax = prefix(sigma.vertex(1), pi);

  std::vector<iv> vert(static_cast<std::size_t>(m));  // {i} x [j, j+1]
  for (int j = 1; j < m; ++j) {
    iv& v = vert[static_cast<std::size_t>(j)];
    if (qmax >= j) {
      v.lo = j;
      v.hi = std::min(qmax, static_cast<double>(j + 1));
    }
  }

  for (int i = 1; i < n; ++i) {
    iv hbot;
    if (pmax >= i) {
      hbot.lo = i;
      hbot.hi = std::min(pmax, static_cast<double>(i + 1));
    }
    for (int j = 1; j < m; ++j) {
      const iv left = vert[static_cast<std::size_t>(j)];
      iv right, top;
      if (!left.empty() || !hbot.empty()) {
        const unit_interval fr =
            circle_segment_params(pi.vertex(i + 1), delta, sigma.seg(j));
        if (!fr.empty()) {
          double lo = j + fr.lo;
          if (hbot.empty()) lo = std::max(lo, left.lo);
          if (lo <= j + fr.hi) {
            right.lo = lo;
            right.hi = j + fr.hi;
          }
        }
        const unit_interval ft =
            circle_segment_params(sigma.vertex(j + 1), delta, pi.seg(i));
        if (!ft.empty()) {
          double lo = i + ft.lo;
          if (left.empty()) lo = std::max(lo, hbot.lo);
          if (lo <= i + ft.hi) {
            top.lo = lo;
            top.hi = i + ft.hi;
          }
        }
      }
      vert[static_cast<std::size_t>(j)] = right;
      hbot = top;
    }
  }
  const iv last = vert[static_cast<std::size_t>(m - 1)];
  return !last.empty() && last.hi >= m;
}

// ---- portable random generation ----------------------------------------
// mt19937_64 output is pinned by the standard; the distribution helpers are
// hand-rolled because the standard distributions are not portable across
// library implementations, and benchmark files must reproduce bit-equal
// from a seed anywhere.

inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  return n == 0 ? 0 : g() % n;
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return lo + static_cast<int>(
                  uniform_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline double gaussian(std::mt19937_64& g) {
  const double u1 = (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// ---- synthetic curves ----------------------------------------------------

struct walk_config {
  int min_vertices = 10;
  int max_vertices = 50;
  double step_len = 1.0;       // mean step length
  double step_spread = 0.5;    // steps drawn uniform in len*(1 +- spread)
  double turn_sigma = 0.5;     // heading change per step, radians
  double start_spread = 20.0;  // start position box half-width
};

/// Smooth random-walk curve, GPS-like: heading performs a random walk while
/// step lengths stay near a configured mean.
inline curve random_walk_curve(std::mt19937_64& g, const walk_config& cfg,
                               std::string id = "") {
  const int count = uniform_int(g, cfg.min_vertices, cfg.max_vertices);
  std::vector<point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  double x = (uniform01(g) * 2.0 - 1.0) * cfg.start_spread;
  double y = (uniform01(g) * 2.0 - 1.0) * cfg.start_spread;
  double heading = uniform01(g) * 6.283185307179586;
  pts.push_back({x, y});
  for (int k = 1; k < count; ++k) {
    heading += gaussian(g) * cfg.turn_sigma;
    const double len =
        cfg.step_len * (1.0 + (uniform01(g) * 2.0 - 1.0) * cfg.step_spread);
    x += std::cos(heading) * len;
    y += std::sin(heading) * len;
    pts.push_back({x, y});
  }
  return curve(std::move(pts), std::move(id));
}

/// Independently jittered copy; useful for generating close pairs.
inline curve perturbed_copy(std::mt19937_64& g, const curve& base,
                            double noise, std::string id = "") {
  std::vector<point> pts;
  pts.reserve(base.vertices().size());
  for (const point& p : base.vertices())
    pts.push_back({p.x + gaussian(g) * noise, p.y + gaussian(g) * noise});
  return curve(std::move(pts), std::move(id));
}

// ---- decider benchmark ----------------------------------------------------

/// One threshold test around the exact distance of a curve pair: delta is
/// (1 - 2^l) * dist (expected far) or (1 + 2^l) * dist (expected close).
struct decider_case {
  std::string pi_id;
  std::string sigma_id;
  double delta = 0.0;
  int k = 0;  // neighbor-rank exponent
  int l = 0;  // distance-factor exponent, -10..0
  bool expect_close = false;
};

/**
 * Builds the decider benchmark: for each of `queries` random query curves,
 * sort the dataset by exact distance, sample one curve from each rank
 * octave [2^k, 2^{k+1}), and emit the 22 threshold tests around its exact
 * distance. Deterministic for a fixed seed.
 */
inline std::vector<decider_case> gen_decider_benchmark(
    const std::vector<curve>& dataset, int queries, std::uint64_t seed) {
  const int count = static_cast<int>(dataset.size());
  if (count < 2) throw bench_error("dataset too small (need at least 2 curves)");
  std::mt19937_64 g(seed);
  std::vector<decider_case> cases;

  const int octaves =
      static_cast<int>(std::floor(std::log2(static_cast<double>(count))));
  for (int t = 0; t < queries; ++t) {
    const int pidx = uniform_int(g, 0, count - 1);
    const curve& q = dataset[static_cast<std::size_t>(pidx)];
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(dataset.size());
    for (int s = 0; s < count; ++s)
      ranked.emplace_back(compute_distance(q, dataset[(std::size_t)s]), s);
    std::sort(ranked.begin(), ranked.end());

    for (int k = 1; k <= octaves; ++k) {
      const int lo = (1 << k) - 1;  // 0-based rank of sigma_{2^k}
      const int hi = std::min((1 << (k + 1)) - 2, count - 1);
      if (lo > hi) continue;
      int pick = uniform_int(g, lo, hi);
      // identical curves make the far side of the test vacuous; take the
      // nearest distinct-distance neighbor in the octave instead
      while (pick <= hi && ranked[(std::size_t)pick].first <= 0.0) ++pick;
      if (pick > hi) continue;
      const double dstar = ranked[(std::size_t)pick].first;
      const std::string& sid =
          dataset[(std::size_t)ranked[(std::size_t)pick].second].id();
      for (int l = -10; l <= 0; ++l) {
        const double f = std::ldexp(1.0, l);
        cases.push_back({q.id(), sid, (1.0 - f) * dstar, k, l, false});
        cases.push_back({q.id(), sid, (1.0 + f) * dstar, k, l, true});
      }
    }
  }
  return cases;
}

// ---- query benchmark -------------------------------------------------

struct query_case {
  std::string pi_id;
  double delta = 0.0;
  int k = 0;  // expected result count is k+1
};

class k_unreachable : public bench_error {
 public:
  explicit k_unreachable(int k)
      : bench_error("dataset has fewer than k+1 curves for k=" +
                    std::to_string(k)) {}
};

/**
 * Builds the query benchmark: per k, picks random query curves and a
 * threshold such that the range query returns exactly k+1 curves (the
 * query curve counts). The threshold is the midpoint between the (k+1)-th
 * and (k+2)-th distance; picks without a strict gap are re-drawn.
 */
inline std::vector<query_case> gen_query_benchmark(
    const std::vector<curve>& dataset, std::uint64_t seed,
    const std::vector<int>& ks = {0, 1, 10, 100, 1000},
    int queries_per_k = 1) {
  const int count = static_cast<int>(dataset.size());
  for (int k : ks)
    if (k + 1 > count) throw k_unreachable(k);
  std::mt19937_64 g(seed);
  std::vector<query_case> cases;

  for (int k : ks) {
    for (int t = 0; t < queries_per_k; ++t) {
      bool made = false;
      for (int attempt = 0; attempt < 64 && !made; ++attempt) {
        const int pidx = uniform_int(g, 0, count - 1);
        const curve& q = dataset[static_cast<std::size_t>(pidx)];
        std::vector<double> dists;
        dists.reserve(dataset.size());
        for (const curve& s : dataset)
          dists.push_back(compute_distance(q, s));
        std::sort(dists.begin(), dists.end());
        double delta;
        if (k + 1 == count) {
          delta = dists.back() + 1.0 + dists.back() * 1e-6;
        } else {
          const double a = dists[(std::size_t)k];
          const double b = dists[(std::size_t)k + 1];
          if (!(b > a * (1.0 + 1e-9) + 1e-12)) continue;  // no usable gap
          delta = 0.5 * (a + b);
        }
        cases.push_back({q.id(), delta, k});
        made = true;
      }
      if (!made)
        throw bench_error("could not realize a query case for k=" +
                          std::to_string(k));
    }
  }
  return cases;
}

// ---- case files ------------------------------------------------------
// Tab-separated, one case per line; '#' header lines carry the seed and
// generation parameters.

inline void write_decider_cases(std::ostream& out,
                                const std::vector<decider_case>& cases,
                                std::uint64_t seed) {
  out << "# decider benchmark; seed=" << seed
      << "; distance tolerances rel=1e-10 abs=1e-12*hi\n";
  out << "# pi\tsigma\tdelta\tk\tl\texpect\n";
  char buf[64];
  for (const auto& c : cases) {
    std::snprintf(buf, sizeof(buf), "%.17g", c.delta);
    out << c.pi_id << '\t' << c.sigma_id << '\t' << buf << '\t' << c.k << '\t'
        << c.l << '\t' << (c.expect_close ? "close" : "far") << '\n';
  }
}

inline std::vector<decider_case> read_decider_cases(std::istream& in) {
  std::vector<decider_case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    decider_case c;
    std::string expect;
    if (!(ss >> c.pi_id >> c.sigma_id >> c.delta >> c.k >> c.l >> expect))
      throw bench_error("malformed decider case line: " + line);
    c.expect_close = expect == "close";
    cases.push_back(std::move(c));
  }
  return cases;
}

inline void write_query_cases(std::ostream& out,
                              const std::vector<query_case>& cases,
                              std::uint64_t seed) {
  out << "# query benchmark; seed=" << seed << "\n# pi\tdelta\tk\n";
  char buf[64];
  for (const auto& c : cases) {
    std::snprintf(buf, sizeof(buf), "%.17g", c.delta);
    out << c.pi_id << '\t' << buf << '\t' << c.k << '\n';
  }
}

inline std::vector<query_case> read_query_cases(std::istream& in) {
  std::vector<query_case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    query_case c;
    if (!(ss >> c.pi_id >> c.delta >> c.k))
      throw bench_error("malformed query case line: " + line);
    cases.push_back(std::move(c));
  }
  return cases;
}

// ---- benchmark runner ------------------------------------------------

struct bench_row {
  int case_id = 0;
  int n = 0, m = 0;
  double delta = 0.0;
  bool close = false;
  decide_stage stage = decide_stage::undecided;
  long boxes = 0;
  long long time_ns = 0;
  std::string config;
};

inline std::string config_label(const decide_config& cfg) {
  std::string label = cfg.use_filters ? "filters" : "nofilters";
  if (!cfg.rules.shrink) label += "-no2";
  if (!cfg.rules.simple_empty) label += "-no3a";
  if (!cfg.rules.simple_corner) label += "-no3b";
  if (!cfg.rules.simple_inside) label += "-no3c";
  if (!cfg.rules.diagram_edge) label += "-no4";
  if (cfg.want_certificate) label += "-cert";
  if (!cfg.use_complete) label += "-nocomplete";
  return label;
}

/// Runs the decider over all cases, one timed call each, single-threaded.
inline std::vector<bench_row> run_benchmark(
    const std::vector<decider_case>& cases, const std::vector<curve>& dataset,
    const decide_config& cfg) {
  std::map<std::string, const curve*> by_id;
  for (const curve& c : dataset) by_id[c.id()] = &c;
  const std::string label = config_label(cfg);

  std::vector<bench_row> rows;
  rows.reserve(cases.size());
  int id = 0;
  for (const decider_case& c : cases) {
    const auto pa = by_id.find(c.pi_id);
    const auto pb = by_id.find(c.sigma_id);
    if (pa == by_id.end() || pb == by_id.end())
      throw bench_error("benchmark case references unknown curve id");
    const auto t0 = std::chrono::steady_clock::now();
    const decide_result r = decide(*pa->second, *pb->second, c.delta, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    bench_row row;
    row.case_id = id++;
    row.n = pa->second->size();
    row.m = pb->second->size();
    row.delta = c.delta;
    row.close = r.verdict == filter_outcome::close;
    row.stage = r.stage;
    row.boxes = r.boxes;
    row.time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    row.config = label;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out,
                            const std::vector<bench_row>& rows) {
  out << "case_id,n,m,delta,verdict,stage,boxes,time_ns,config\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.delta);
    out << r.case_id << ',' << r.n << ',' << r.m << ',' << buf << ','
        << (r.close ? "close" : "far") << ',' << stage_name(r.stage) << ','
        << r.boxes << ',' << r.time_ns << ',' << r.config << '\n';
  }
}

inline std::vector<bench_row> read_bench_csv(std::istream& in) {
  std::vector<bench_row> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw bench_error("malformed csv row: " + line);
    bench_row r;
    r.case_id = std::stoi(fields[0]);
    r.n = std::stoi(fields[1]);
    r.m = std::stoi(fields[2]);
    r.delta = std::stod(fields[3]);
    r.close = fields[4] == "close";
    for (decide_stage s :
         {decide_stage::endpoints, decide_stage::bbox, decide_stage::greedy,
          decide_stage::equal_time, decide_stage::negative,
          decide_stage::complete, decide_stage::undecided})
      if (fields[5] == stage_name(s)) r.stage = s;
    r.boxes = std::stol(fields[6]);
    r.time_ns = std::stoll(fields[7]);
    r.config = fields[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---- analysis helpers --------------------------------------------------

struct linear_fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline linear_fit fit_line(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  linear_fit f;
  const std::size_t n = xs.size();
  if (n < 2) return f;
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = xs[k] - mx, dy = ys[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = (sxy * sxy) / (sxx * syy);
  return f;
}

/// Emits "boxes<TAB>time_ns" pairs for the complete-decider calls, the raw
/// material of the boxes-versus-time correlation plot.
inline void write_boxes_time(std::ostream& out,
                             const std::vector<bench_row>& rows) {
  out << "# boxes\ttime_ns\n";
  for (const auto& r : rows)
    if (r.stage == decide_stage::complete)
      out << r.boxes << '\t' << r.time_ns << '\n';
}

/// Per-(k,l) aggregate table of a decider benchmark run.
inline void write_kl_table(std::ostream& out,
                           const std::vector<decider_case>& cases,
                           const std::vector<bench_row>& rows) {
  if (cases.size() != rows.size())
    throw bench_error("case/row count mismatch for aggregate table");
  std::map<std::pair<int, int>, std::pair<long long, long>> agg;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    auto& slot = agg[{cases[t].k, cases[t].l}];
    slot.first += rows[t].time_ns;
    slot.second += 1;
  }
  out << "# k\tl\tcases\tmean_time_ns\n";
  for (const auto& [key, val] : agg)
    out << key.first << '\t' << key.second << '\t' << val.second << '\t'
        << (val.first / val.second) << '\n';
}

}  // namespace frechet

#endif
