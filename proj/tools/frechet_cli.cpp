// Command-line front end: decide / distance / query / certificates /
// benchmark generation and runs / plot data extraction.
//
// Exit codes: 0 = close or accepted, 1 = far or rejected, 2 = usage/IO error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frechet/frechet.hpp"

namespace {

constexpr int EXIT_CLOSE = 0;
constexpr int EXIT_FAR = 1;
constexpr int EXIT_ERROR = 2;

frechet::rule_mask mask_from_disabled(const std::vector<std::string>& off) {
  frechet::rule_mask m;
  for (const std::string& r : off) {
    if (r == "2")
      m.shrink = false;
    else if (r == "3a")
      m.simple_empty = false;
    else if (r == "3b")
      m.simple_corner = false;
    else if (r == "3c")
      m.simple_inside = false;
    else if (r == "4")
      m.diagram_edge = false;
    else
      throw CLI::ValidationError("--disable-rule",
                                 "unknown rule '" + r + "'");
  }
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw frechet::parse_error("cannot open output file: " + path, 0);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace frechet;
  CLI::App app{"Fréchet distance decider, query structure and benchmarks"};
  app.require_subcommand(1);

  // ---- decide ----
  std::string arg_a, arg_b, arg_cert_out, arg_dump_boxes;
  double arg_delta = 0.0;
  bool arg_certify = false, arg_no_filters = false, arg_stats = false;
  std::vector<std::string> arg_disable;
  auto* cmd_decide = app.add_subcommand("decide", "decide d_F(A,B) <= delta");
  cmd_decide->add_option("curveA", arg_a)->required();
  cmd_decide->add_option("curveB", arg_b)->required();
  cmd_decide->add_option("delta", arg_delta)->required();
  cmd_decide->add_flag("--certify", arg_certify, "attach and print a certificate");
  cmd_decide->add_option("--cert-out", arg_cert_out, "write certificate to file");
  cmd_decide->add_flag("--no-filters", arg_no_filters, "skip the filter cascade");
  cmd_decide->add_option("--disable-rule", arg_disable,
                         "disable a pruning rule (2, 3a, 3b, 3c, 4)");
  cmd_decide->add_flag("--stats", arg_stats, "print deciding stage and box count");
  cmd_decide->add_option("--dump-boxes", arg_dump_boxes,
                         "write the explored box tree (i i2 j j2 rule)");

  // ---- distance ----
  double arg_rel = 1e-10, arg_abs = -1.0;
  auto* cmd_dist = app.add_subcommand("distance", "compute d_F(A,B)");
  cmd_dist->add_option("curveA", arg_a)->required();
  cmd_dist->add_option("curveB", arg_b)->required();
  cmd_dist->add_option("--rel-tol", arg_rel);
  cmd_dist->add_option("--abs-tol", arg_abs);

  // ---- query ----
  std::string arg_dataset, arg_query_curve;
  int arg_threads = 0;
  auto* cmd_query = app.add_subcommand("query", "near-neighbor query over a dataset");
  cmd_query->add_option("--dataset", arg_dataset)->required();
  cmd_query->add_option("--query-curve", arg_query_curve)->required();
  cmd_query->add_option("--delta", arg_delta)->required();
  cmd_query->add_option("--threads", arg_threads);

  // ---- check-cert ----
  std::string arg_certfile;
  auto* cmd_check = app.add_subcommand("check-cert", "verify a certificate file");
  cmd_check->add_option("curveA", arg_a)->required();
  cmd_check->add_option("curveB", arg_b)->required();
  cmd_check->add_option("delta", arg_delta)->required();
  cmd_check->add_option("certfile", arg_certfile)->required();

  // ---- gen-bench ----
  std::string arg_kind, arg_out;
  std::uint64_t arg_seed = 1;
  int arg_queries = 10;
  auto* cmd_gen = app.add_subcommand("gen-bench", "generate a benchmark file");
  cmd_gen->add_option("kind", arg_kind)
      ->required()
      ->check(CLI::IsMember({"decider", "query"}));
  cmd_gen->add_option("--dataset", arg_dataset)->required();
  cmd_gen->add_option("--seed", arg_seed);
  cmd_gen->add_option("--out", arg_out)->required();
  cmd_gen->add_option("--queries", arg_queries, "query curves per benchmark");

  // ---- run-bench ----
  std::string arg_cases;
  bool arg_run_certify = false, arg_run_nofilters = false;
  std::vector<std::string> arg_run_disable;
  auto* cmd_run = app.add_subcommand("run-bench", "run a decider benchmark, emit CSV");
  cmd_run->add_option("--cases", arg_cases)->required();
  cmd_run->add_option("--dataset", arg_dataset)->required();
  cmd_run->add_option("--out", arg_out)->required();
  cmd_run->add_flag("--certify", arg_run_certify);
  cmd_run->add_flag("--no-filters", arg_run_nofilters);
  cmd_run->add_option("--disable-rule", arg_run_disable,
                      "disable a pruning rule (2, 3a, 3b, 3c, 4)");

  // ---- oracle ----
  auto* cmd_oracle = app.add_subcommand("oracle", "naive full-DP reference decider");
  cmd_oracle->add_option("curveA", arg_a)->required();
  cmd_oracle->add_option("curveB", arg_b)->required();
  cmd_oracle->add_option("delta", arg_delta)->required();

  // ---- plot-data ----
  std::string arg_csv, arg_dump_in;
  auto* cmd_plot = app.add_subcommand("plot-data", "extract plot-ready tables");
  auto* plot_times = cmd_plot->add_subcommand(
      "times", "boxes vs time pairs of the complete-decider calls");
  plot_times->add_option("--csv", arg_csv)->required();
  plot_times->add_option("--out", arg_out)->required();
  auto* plot_table = cmd_plot->add_subcommand(
      "table", "per-(k,l) mean times of a decider benchmark run");
  plot_table->add_option("--cases", arg_cases)->required();
  plot_table->add_option("--csv", arg_csv)->required();
  plot_table->add_option("--out", arg_out)->required();
  auto* plot_boxes = cmd_plot->add_subcommand(
      "boxes", "box rectangles from a decide --dump-boxes file");
  plot_boxes->add_option("--dump", arg_dump_in)->required();
  plot_boxes->add_option("--out", arg_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_decide) {
      const curve a = load_curve_file(arg_a);
      const curve b = load_curve_file(arg_b);
      decide_config cfg;
      cfg.use_filters = !arg_no_filters;
      cfg.rules = mask_from_disabled(arg_disable);
      cfg.want_certificate = arg_certify || !arg_cert_out.empty();
      cfg.collect_trace = !arg_dump_boxes.empty();
      const decide_result r = decide(a, b, arg_delta, cfg);
      std::printf("%s\n", r.verdict == filter_outcome::close ? "close" : "far");
      if (arg_stats) {
        std::printf("stage %s\n", stage_name(r.stage));
        std::printf("boxes %ld\n", r.boxes);
      }
      if (cfg.want_certificate && r.cert) {
        if (!arg_cert_out.empty()) {
          auto out = open_out(arg_cert_out);
          write_certificate(out, *r.cert, a.size(), b.size(), arg_delta);
        } else {
          write_certificate(std::cout, *r.cert, a.size(), b.size(), arg_delta);
        }
      }
      if (!arg_dump_boxes.empty()) {
        auto out = open_out(arg_dump_boxes);
        for (const box_trace& t : r.trace)
          out << t.i << ' ' << t.i2 << ' ' << t.j << ' ' << t.j2 << ' '
              << t.rule << '\n';
      }
      return r.verdict == filter_outcome::close ? EXIT_CLOSE : EXIT_FAR;
    }

    if (*cmd_dist) {
      const curve a = load_curve_file(arg_a);
      const curve b = load_curve_file(arg_b);
      std::printf("%.17g\n", compute_distance(a, b, arg_rel, arg_abs));
      return EXIT_CLOSE;
    }

    if (*cmd_query) {
      const std::vector<curve> dataset = load_dataset(arg_dataset);
      const curve q = load_curve_file(arg_query_curve);
      const kd_tree8 tree = build_index(dataset);
      for (int idx : find_close_curves(tree, dataset, q, arg_delta, arg_threads))
        std::printf("%s\n", dataset[static_cast<std::size_t>(idx)].id().c_str());
      return EXIT_CLOSE;
    }

    if (*cmd_check) {
      const curve a = load_curve_file(arg_a);
      const curve b = load_curve_file(arg_b);
      std::ifstream in(arg_certfile);
      if (!in) throw parse_error("cannot open certificate: " + arg_certfile, 0);
      const cert_file cf = read_certificate(in);
      if (cf.n != a.size() || cf.m != b.size())
        throw parse_error("certificate size header does not match curves", 2);
      if (std::abs(cf.delta - arg_delta) >
          1e-12 * std::max(1.0, std::abs(arg_delta)))
        throw parse_error("certificate delta does not match", 2);
      const check_result cr = check_certificate(a, b, arg_delta, cf.cert);
      if (cr.accepted) {
        std::printf("accept\n");
        return EXIT_CLOSE;
      }
      std::printf("reject %s %zu\n", cr.reason.c_str(), cr.index);
      return EXIT_FAR;
    }

    if (*cmd_gen) {
      const std::vector<curve> dataset = load_dataset(arg_dataset);
      auto out = open_out(arg_out);
      if (arg_kind == "decider") {
        write_decider_cases(out, gen_decider_benchmark(dataset, arg_queries, arg_seed),
                            arg_seed);
      } else {
        std::vector<int> ks;
        for (int k : {0, 1, 10, 100, 1000})
          if (k + 1 <= static_cast<int>(dataset.size())) ks.push_back(k);
        write_query_cases(out, gen_query_benchmark(dataset, arg_seed, ks, arg_queries),
                          arg_seed);
      }
      return EXIT_CLOSE;
    }

    if (*cmd_run) {
      const std::vector<curve> dataset = load_dataset(arg_dataset);
      std::ifstream in(arg_cases);
      if (!in) throw parse_error("cannot open cases: " + arg_cases, 0);
      const auto cases = read_decider_cases(in);
      decide_config cfg;
      cfg.use_filters = !arg_run_nofilters;
      cfg.rules = mask_from_disabled(arg_run_disable);
      cfg.want_certificate = arg_run_certify;
      auto out = open_out(arg_out);
      write_bench_csv(out, run_benchmark(cases, dataset, cfg));
      return EXIT_CLOSE;
    }

    if (*cmd_oracle) {
      const curve a = load_curve_file(arg_a);
      const curve b = load_curve_file(arg_b);
      const bool close = naive_dp_decide(a, b, arg_delta);
      std::printf("%s\n", close ? "close" : "far");
      return close ? EXIT_CLOSE : EXIT_FAR;
    }

    if (*cmd_plot) {
      if (*plot_times) {
        std::ifstream in(arg_csv);
        if (!in) throw parse_error("cannot open csv: " + arg_csv, 0);
        auto out = open_out(arg_out);
        write_boxes_time(out, read_bench_csv(in));
      } else if (*plot_table) {
        std::ifstream ci(arg_cases);
        if (!ci) throw parse_error("cannot open cases: " + arg_cases, 0);
        std::ifstream ri(arg_csv);
        if (!ri) throw parse_error("cannot open csv: " + arg_csv, 0);
        auto out = open_out(arg_out);
        write_kl_table(out, read_decider_cases(ci), read_bench_csv(ri));
      } else if (*plot_boxes) {
        std::ifstream in(arg_dump_in);
        if (!in) throw parse_error("cannot open dump: " + arg_dump_in, 0);
        auto out = open_out(arg_out);
        // each box becomes a closed rectangle outline, blank-line separated
        int i, i2, j, j2;
        std::string rule;
        while (in >> i >> i2 >> j >> j2 >> rule) {
          out << i << ' ' << j << '\n'
              << i2 << ' ' << j << '\n'
              << i2 << ' ' << j2 << '\n'
              << i << ' ' << j2 << '\n'
              << i << ' ' << j << "\n\n";
        }
      } else {
        std::cerr << "plot-data requires a subcommand\n";
        return EXIT_ERROR;
      }
      return EXIT_CLOSE;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_ERROR;
  }
  return EXIT_ERROR;
}
