// pfp_netlab: grow PFP networks, analyse peering lists, compare reports and
// draw k-core shells.
//
// Exit codes: 0 success, 1 data/runtime error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfpnet/pfpnet.hpp"

namespace fs = std::filesystem;
using namespace pfpnet;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

Graph load_graph(const fs::path& path) {
  try {
    return parse_peering_list(read_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

MetricsReport load_report(const fs::path& path) {
  try {
    return read_report(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

struct GenerateArgs {
  std::size_t nodes = 0;
  double p = 0.4;
  double delta = 0.048;
  std::size_t runs = 10;
  std::size_t seed_size = 5;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

void cmd_generate(const GenerateArgs& a) {
  PfpParams params;
  params.p = a.p;
  params.delta = a.delta;
  params.target_n = a.nodes;
  params.seed_size = a.seed_size;
  params.rng_seed = a.seed;
  try {
    params.validate();
    if (a.runs == 0) throw ParameterError("--runs must be at least 1");
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }

  const unsigned threads = thread_count_from_env();
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  auto graphs = grow_ensemble(params, a.runs, threads);
  std::vector<MetricsReport> reports(graphs.size());
  // Ensemble members run in parallel; each report's BFS stays sequential.
  parallel_for(graphs.size(), threads, [&](std::size_t i) { reports[i] = full_report(graphs[i], 1); });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    write_file(dir / ("run_" + std::to_string(i) + ".asl"), write_peering_list(graphs[i]));
    write_file(dir / ("run_" + std::to_string(i) + ".report"), write_report(reports[i]));
  }
  write_file(dir / "ensemble.report", write_report(average_reports(reports)));
}

struct AnalyzeArgs {
  std::string input;
  std::string report;
  std::string dists;
};

void cmd_analyze(const AnalyzeArgs& a) {
  const Graph g = load_graph(a.input);
  const unsigned threads = thread_count_from_env();
  const auto text = write_report(full_report(g, threads));
  if (a.report.empty()) std::cout << text;
  else write_file(a.report, text);

  if (a.dists.empty()) return;
  const fs::path dir(a.dists);
  fs::create_directories(dir);
  auto emit = [&](const char* name, const DistributionTable& t) {
    write_file(dir / (std::string(name) + ".csv"), write_distribution_csv(t));
  };
  const DistributionTable none;
  auto or_empty = [&](auto&& fn) -> DistributionTable {
    try {
      return fn();
    } catch (const UndefinedMetric&) {
      return none;
    }
  };
  DegreeDistribution deg;
  if (!g.empty()) deg = degree_distribution(g);
  emit("degree_pdf", deg.pdf);
  emit("degree_ccd", deg.ccd);
  emit("knn", or_empty([&] { return knn_by_degree(g); }));
  emit("richclub_degree", or_empty([&] { return rich_club_by_degree(g); }));
  emit("richclub_rank", rich_club_by_rank(g));
  TriangleSummaries tri;
  if (!g.empty()) tri = triangle_summaries(g);
  emit("triangle_ccd", tri.ccd);
  emit("triangle_by_degree", tri.by_degree);
  PathStats paths;
  try {
    paths = shortest_path_stats(g, threads);
  } catch (const UndefinedMetric&) {
  }
  emit("pathlen_ccd", paths.ccd);
  emit("pathlen_by_degree", paths.by_degree);
}

struct CompareArgs {
  std::vector<std::string> reports;
  std::string tolerances;
};

int cmd_compare(const CompareArgs& a) {
  std::vector<std::string> names;
  std::vector<MetricsReport> reports;
  for (const auto& path : a.reports) {
    names.push_back(fs::path(path).stem().string());
    reports.push_back(load_report(path));
  }
  std::optional<Tolerances> tol;
  if (!a.tolerances.empty()) {
    try {
      tol = parse_tolerances(read_file(a.tolerances));
    } catch (const ParseError& e) {
      throw std::runtime_error(a.tolerances + ": " + e.what());
    }
  }
  const auto cmp = compare_reports(names, reports, tol);
  std::cout << cmp.table;
  if (tol) std::cout << (cmp.pass ? "PASS\n" : "FAIL\n");
  return cmp.pass ? 0 : 1;
}

struct SvgArgs {
  std::string input;
  std::string out;
  double width = 1000;
  double height = 1000;
};

void cmd_kcore_svg(const SvgArgs& a) {
  const Graph g = load_graph(a.input);
  if (g.empty()) throw std::runtime_error(a.input + ": graph is empty");
  const auto core = coreness(g);
  if (core.c_max == 0) throw std::runtime_error(a.input + ": graph has no links");
  write_file(a.out, render_svg(layout(g, core), g, {a.width, a.height}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PFP network growth and AS-graph topology metrics"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Grow an ensemble of PFP networks");
  generate->add_option("--nodes", gen.nodes, "Final node count")->required();
  generate->add_option("--seed", gen.seed, "RNG seed")->required();
  generate->add_option("--p", gen.p, "Probability of the one-host branch")->capture_default_str();
  generate->add_option("--delta", gen.delta, "Positive-feedback strength")->capture_default_str();
  generate->add_option("--runs", gen.runs, "Ensemble size")->capture_default_str();
  generate->add_option("--seed-size", gen.seed_size, "Initial random graph size")->capture_default_str();
  generate->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Compute the metrics report of a peering list");
  analyze->add_option("input", an.input, "Peering list (.asl)")->required();
  analyze->add_option("--report", an.report, "Report output path (stdout when omitted)");
  analyze->add_option("--dists", an.dists, "Directory for distribution CSVs");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Tabulate reports side by side");
  compare->add_option("reports", cmp.reports, "Report files; the first is the reference")
      ->required()
      ->expected(2, -1);
  compare->add_option("--tolerances", cmp.tolerances, "Tolerance file; turns compare into a pass/fail gate");

  SvgArgs svg;
  auto* kcore = app.add_subcommand("kcore-svg", "Draw the k-core shell structure as SVG");
  kcore->add_option("input", svg.input, "Peering list (.asl)")->required();
  kcore->add_option("--out", svg.out, "SVG output path")->required();
  kcore->add_option("--width", svg.width, "Canvas width")->capture_default_str()->check(CLI::PositiveNumber);
  kcore->add_option("--height", svg.height, "Canvas height")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*generate) cmd_generate(gen);
    else if (*analyze) cmd_analyze(an);
    else if (*compare) return cmd_compare(cmp);
    else if (*kcore) cmd_kcore_svg(svg);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "pfp_netlab: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pfp_netlab: " << e.what() << '\n';
    return 1;
  }
}
