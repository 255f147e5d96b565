#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace testing_support;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cohesion");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cohesion::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, '\t');) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cohesion_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

const std::string kDolphins = std::string(COHESION_DATA_DIR) + "/dolphins.tsv";

std::string k5_beside_k23() {
  std::string s;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) s += "c" + std::to_string(i) + " c" + std::to_string(j) + "\n";
  for (const char* a : {"a0", "a1"})
    for (const char* b : {"b0", "b1", "b2"}) s += std::string(a) + " " + b + "\n";
  return s;
}

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 2);
  Result r = run_cli({"truss", "--bogus", kDolphins});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
  EXPECT_EQ(run_cli({"truss", (dir_ / "missing.tsv").string()}).code, 2);
  EXPECT_EQ(run_cli({"nope"}).code, 2);
}

TEST_F(CliTest, TrussAtFiveOnDolphins) {
  Result r = run_cli({"truss", "--k", "5", "--out-dir", out("t"), kDolphins});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("k=5 trusses=2"), std::string::npos);
  std::set<std::string> indices;
  for (auto& row : rows(dir_ / "t" / "trusses.tsv")) {
    ASSERT_EQ(row.size(), 4u);
    EXPECT_EQ(row[0], "5");
    indices.insert(row[1]);
  }
  EXPECT_EQ(indices, (std::set<std::string>{"0", "1"}));
  EXPECT_TRUE(fs::exists(dir_ / "t" / "trussness.tsv"));
  EXPECT_TRUE(fs::exists(dir_ / "t" / "dendrogram.tsv"));
  EXPECT_TRUE(fs::exists(dir_ / "t" / "labels.tsv"));
}

TEST_F(CliTest, TrussBelowTwoFails) {
  Result r = run_cli({"truss", "--k", "1", "--out-dir", out("t"), kDolphins});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("k must be at least 2"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, MalformedInputFails) {
  fs::path bad = write("bad.tsv", "a b\nc\n");
  Result r = run_cli({"stats", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  fs::path neg = write("neg.tsv", "a b -2\n");
  EXPECT_EQ(run_cli({"weighted-truss", "--out-dir", out("w"), neg.string()}).code, 1);
}

TEST_F(CliTest, TsvAndJsonCarrySameClusters) {
  ASSERT_EQ(run_cli({"strong-truss", "--out-dir", out("tsv"), kDolphins}).code, 0);
  ASSERT_EQ(run_cli({"strong-truss", "--format", "json", "--out-dir", out("json"), kDolphins}).code, 0);
  std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>> a, b;
  for (auto& row : rows(dir_ / "tsv" / "strong_trusses.tsv")) {
    ASSERT_EQ(row.size(), 5u);
    a.insert({row[0], row[1], row[2], row[3], row[4]});
  }
  auto j = nlohmann::json::parse(slurp(dir_ / "json" / "strong_trusses.json"));
  for (auto& grp : j)
    for (auto& c : grp["clusters"])
      for (auto& e : c["edges"])
        b.insert({std::to_string(grp["k"].get<int>()), grp["kind"].get<std::string>(),
                  std::to_string(c["index"].get<int>()), e[0].get<std::string>(), e[1].get<std::string>()});
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run_cli({"truss", "--out-dir", out(sub), kDolphins}).code, 0);
    ASSERT_EQ(run_cli({"summit", "--strong", "--out-dir", out(sub), kDolphins}).code, 0);
  }
  for (const char* f : {"trussness.tsv", "trusses.tsv", "dendrogram.tsv", "summits.tsv", "labels.tsv"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(CliTest, SummitsOnDolphins) {
  Result r = run_cli({"summit", "--out-dir", out("s"), kDolphins});
  ASSERT_EQ(r.code, 0) << r.err;
  std::map<std::string, std::set<std::string>> per_level;
  for (auto& row : rows(dir_ / "s" / "summits.tsv")) {
    EXPECT_EQ(row[1], "summit");
    per_level[row[0]].insert(row[2]);
  }
  EXPECT_EQ(per_level["5"].size(), 2u);
}

TEST_F(CliTest, TrapezeLevels) {
  fs::path in = write("bip.tsv", k5_beside_k23());
  Result r = run_cli({"trapeze", "--levels", "1,2,4", "--check-bipartite", "--out-dir", out("z"), in.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bipartite=no"), std::string::npos);
  EXPECT_NE(r.out.find("k=1 trapezes=2"), std::string::npos);
  EXPECT_NE(r.out.find("k=2 trapezes=2"), std::string::npos);
  EXPECT_NE(r.out.find("k=4 trapezes=1"), std::string::npos);
  std::map<std::string, std::size_t> summit_edges;
  for (auto& row : rows(dir_ / "z" / "trapeze_summits.tsv")) {
    EXPECT_EQ(row[1], "summit");
    ++summit_edges[row[0]];
  }
  EXPECT_EQ(summit_edges, (std::map<std::string, std::size_t>{{"2", 6}, {"4", 10}}));

  Result s = run_cli({"strong-trapeze", "--geometric", "2", "--out-dir", out("z"), in.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("k=4 strong_trapezes=1"), std::string::npos);
  for (auto& row : rows(dir_ / "z" / "strong_trapezes.tsv")) EXPECT_EQ(row[1], "strong");

  Result t = run_cli({"summit-trapeze", "--levels", "1,2,4", "--out-dir", out("z"), in.string()});
  EXPECT_NE(t.out.find("summits=2"), std::string::npos);
  EXPECT_EQ(run_cli({"trapeze", "--levels", "2,1", in.string()}).code, 1);
}

TEST_F(CliTest, WeightedOutputs) {
  fs::path in = write("w.tsv", "a b 10\nb c 10\na c 10\nc d 1\nd e 1\nc e 1\n");
  Result r = run_cli({"weighted-truss", "--out-dir", out("w"), in.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("k_max=12 summits=2"), std::string::npos);
  for (const char* f : {"weighted_trussness.tsv", "weighted_trusses.tsv", "weighted_strong_trusses.tsv",
                        "weighted_summits.tsv", "weighted_strong_dendrogram.tsv"})
    EXPECT_TRUE(fs::exists(dir_ / "w" / f)) << f;
  Result cap = run_cli({"weighted-truss", "--support-cap", "5", "--out-dir", out("w"), in.string()});
  EXPECT_EQ(cap.code, 1);
  EXPECT_EQ(run_cli({"weighted-truss", "--weight-fn", "mean", in.string()}).code, 2);
}

TEST_F(CliTest, Stats) {
  Result r = run_cli({"stats", kDolphins});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("vertices\t62"), std::string::npos);
  EXPECT_NE(r.out.find("edges\t159"), std::string::npos);
  EXPECT_NE(r.out.find("k_max\t5"), std::string::npos);
  Result j = run_cli({"stats", "--format", "json", kDolphins});
  EXPECT_EQ(nlohmann::json::parse(j.out)["edges"].get<int>(), 159);
}

TEST_F(CliTest, BenchReports) {
  Result r = run_cli({"bench", "--l", "10", "--size", "10", "--p", "0.8", "--mu", "0.1", "--method", "truss",
                      "--trials", "3", "--seed", "7", "--k-max", "5", "--output", out("report.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("seed\t7"), std::string::npos);
  EXPECT_NE(r.out.find("k=4"), std::string::npos);
  std::string first = slurp(dir_ / "report.tsv");
  ASSERT_EQ(run_cli({"bench", "--l", "10", "--size", "10", "--p", "0.8", "--mu", "0.1", "--method", "truss",
                     "--trials", "3", "--seed", "7", "--k-max", "5", "--output", out("report.tsv")})
                .code,
            0);
  EXPECT_EQ(first, slurp(dir_ / "report.tsv"));

  Result clique = run_cli({"bench", "--l", "5", "--size", "6", "--p", "1", "--mu", "0", "--trials", "2",
                           "--k-min", "6", "--k-max", "6", "--format", "json"});
  ASSERT_EQ(clique.code, 0) << clique.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(clique.out)["nmi"]["6"].get<double>(), 1.0);

  Result summit = run_cli({"bench", "--method", "summit", "--sizes", "5..10", "--l", "10", "--trials", "2"});
  ASSERT_EQ(summit.code, 0) << summit.err;
  EXPECT_NE(summit.out.find("\tsummit\n"), std::string::npos);
  EXPECT_EQ(summit.out.find("k="), std::string::npos);

  Result bad = run_cli({"bench", "--l", "2", "--size", "2", "--p", "1", "--mu", "0.9"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("r = "), std::string::npos);
}

TEST_F(CliTest, GraphExports) {
  Result r = run_cli({"truss", "--k", "5", "--out-dir", out("e"), "--dot", out("g.dot"), "--graphml", out("g.graphml"),
                      kDolphins});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string dot = slurp(dir_ / "g.dot");
  EXPECT_NE(dot.find("subgraph cluster_0"), std::string::npos);
  EXPECT_NE(dot.find("subgraph cluster_1"), std::string::npos);
  EXPECT_EQ(dot.find("subgraph cluster_2"), std::string::npos);
  std::string gml = slurp(dir_ / "g.graphml");
  EXPECT_NE(gml.find("attr.name=\"phi\""), std::string::npos);
  EXPECT_NE(gml.find("attr.name=\"cluster\""), std::string::npos);
  EXPECT_EQ(std::count(gml.begin(), gml.end(), '\n') > 159, true);
}
