#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "pfpnet/io_formats.hpp"
#include "test_support.hpp"

using namespace pfpnet;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(PFP_NETLAB_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("pfp_netlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string at(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
};

}  // namespace

TEST_F(Cli, GenerateEnsemble) {
  ASSERT_EQ(run("generate --nodes 84 --seed 7 --runs 10 --out-dir " + dir.string()), 0);
  for (int i = 0; i < 10; ++i) {
    auto g = parse_peering_list(slurp(dir / ("run_" + std::to_string(i) + ".asl")));
    EXPECT_EQ(g.node_count(), 84u);
    auto r = read_report(slurp(dir / ("run_" + std::to_string(i) + ".report")));
    EXPECT_EQ(*r.n.value, 84.0);
    EXPECT_EQ(*r.l.value, static_cast<double>(g.edge_count()));
  }
  auto ensemble = read_report(slurp(dir / "ensemble.report"));
  EXPECT_EQ(*ensemble.n.value, 84.0);
}

TEST_F(Cli, GenerateSeedOnly) {
  ASSERT_EQ(run("generate --nodes 5 --seed 3 --runs 1 --out-dir " + dir.string()), 0);
  auto g = parse_peering_list(slurp(dir / "run_0.asl"));
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_TRUE(is_connected(g));
}

TEST_F(Cli, GenerateIsReproducibleAcrossThreadCounts) {
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  ASSERT_EQ(run("generate --nodes 200 --seed 11 --runs 4 --out-dir " + at("a")), 0);
  const std::string cmd = "PFP_NETLAB_THREADS=3 " + std::string(PFP_NETLAB_BIN) +
                          " generate --nodes 200 --seed 11 --runs 4 --out-dir " + at("b") + " >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  for (const auto& name : {"run_0.asl", "run_3.asl", "run_2.report", "ensemble.report"})
    EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name)) << name;
}

TEST_F(Cli, GenerateUsageErrors) {
  EXPECT_EQ(run("generate --seed 1"), 2);
  EXPECT_EQ(run("generate --nodes 3 --seed 1 --out-dir " + dir.string()), 2);
  EXPECT_EQ(run("generate --nodes 10 --seed 1 --p 2 --out-dir " + dir.string()), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, AnalyzeWritesReportAndDistributions) {
  spit(dir / "k4.asl", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  ASSERT_EQ(run("analyze " + at("k4.asl") + " --report " + at("k4.report") + " --dists " + at("dists")), 0);
  auto r = read_report(slurp(dir / "k4.report"));
  EXPECT_EQ(*r.n.value, 4.0);
  EXPECT_EQ(*r.l.value, 6.0);
  EXPECT_FALSE(r.alpha.defined());
  EXPECT_EQ(r.alpha.reason, "regular");
  std::size_t csvs = 0;
  for (const auto& e : fs::directory_iterator(dir / "dists")) {
    EXPECT_EQ(e.path().extension(), ".csv");
    EXPECT_EQ(slurp(e.path()).substr(0, 4), "x,y\n");
    ++csvs;
  }
  EXPECT_EQ(csvs, 9u);
  EXPECT_EQ(slurp(dir / "dists" / "degree_pdf.csv"), "x,y\n3,1\n");
}

TEST_F(Cli, AnalyzeDataErrors) {
  spit(dir / "bad.asl", "1 2\n3\n");
  EXPECT_EQ(run("analyze " + at("bad.asl")), 1);
  EXPECT_EQ(run("analyze " + at("missing.asl")), 1);
}

TEST_F(Cli, CompareReports) {
  spit(dir / "k4.asl", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n1 5\n");
  ASSERT_EQ(run("analyze " + at("k4.asl") + " --report " + at("a.report")), 0);
  spit(dir / "tol", "gamma 0\nl 0\nalpha 0\n");
  EXPECT_EQ(run("compare " + at("a.report") + " " + at("a.report") + " --tolerances " + at("tol")), 0);
  EXPECT_EQ(run("compare " + at("a.report") + " " + at("a.report")), 0);
  auto text = slurp(dir / "a.report");
  text.replace(text.find("l 7"), 3, "l 9");
  spit(dir / "b.report", text);
  EXPECT_EQ(run("compare " + at("a.report") + " " + at("b.report") + " --tolerances " + at("tol")), 1);
  EXPECT_EQ(run("compare " + at("a.report")), 2);

  const std::string cmd = std::string(PFP_NETLAB_BIN) + " compare " + at("a.report") + " " + at("b.report") +
                          " > " + at("table.txt");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  auto table = slurp(dir / "table.txt");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 11);
}

TEST_F(Cli, KcoreSvg) {
  spit(dir / "k4.asl", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  ASSERT_EQ(run("kcore-svg " + at("k4.asl") + " --out " + at("k4.svg")), 0);
  auto svg = slurp(dir / "k4.svg");
  std::size_t circles = 0;
  for (auto p = svg.find("<circle "); p != std::string::npos; p = svg.find("<circle ", p + 1)) ++circles;
  EXPECT_EQ(circles, 4u);
  spit(dir / "empty.asl", "# nothing\n");
  EXPECT_EQ(run("kcore-svg " + at("empty.asl") + " --out " + at("e.svg")), 1);
  EXPECT_EQ(run("kcore-svg " + at("k4.asl")), 2);
}
