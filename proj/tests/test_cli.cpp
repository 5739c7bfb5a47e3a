#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "semistream/bench/budget.hpp"
#include "semistream/harness/generators.hpp"
#include "semistream/harness/stream_io.hpp"
#include "semistream/oracle/dfs_check.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/leaf.hpp"

using namespace semistream;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("semistream_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI with stdout to `stdout_name` in the scratch dir; returns the exit code.
  int run(const std::string& args, const std::string& stdout_name = "stdout.txt") const {
    const std::string cmd =
        std::string(SEMISTREAM_CLI_PATH) + " " + args + " > " + path(stdout_name) + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json load(const std::string& name) const { return json::parse(slurp(name)); }

  void write_stream_file(const std::string& name, const EdgeList& el, StreamModel model, std::uint64_t seed) const {
    std::ofstream out(path(name));
    write_stream(out, make_stream(el, model, seed));
  }

  std::size_t files_starting_with(const std::string& prefix) const {
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(dir_)) {
      if (e.path().filename().string().rfind(prefix, 0) == 0) ++count;
    }
    return count;
  }

  fs::path dir_;
};

std::vector<NodeId> parents_of(const json& tree) {
  std::vector<NodeId> p;
  for (const auto& x : tree["parent"]) p.push_back(x.is_null() ? kNoNode : x.get<NodeId>());
  return p;
}

}  // namespace

TEST_F(Cli, SmokeBfsRandWritesTreeAndMeter) {
  ASSERT_EQ(run("run --alg bfs-rand --gen gnp:500,0.02 --seed 7 --k 66 --out " + path("bfs")), 0) << slurp("stderr.txt");
  const json res = load("bfs.json");
  const json meter = load("bfs.meter.json");
  EXPECT_EQ(meter["schema"], "meter/v1");
  EXPECT_EQ(meter["algorithm"], "bfs-rand");
  EXPECT_GT(meter["passes"].get<int>(), 0);
  EXPECT_EQ(res["tree"]["parent"].size(), 500u);
  EXPECT_EQ(res["dist"].size(), 500u);
  EXPECT_FALSE(meter["over_budget"].get<bool>());
}

TEST_F(Cli, BfsRandOnStreamFileMatchesOracle) {
  const EdgeList el = gen::gnp(300, 0.02, 41);
  write_stream_file("g.txt", el, StreamModel::InsertionOnly, 1);
  ASSERT_EQ(run("run --alg bfs-rand --stream " + path("g.txt") + " --seed 3 --root 5 --out " + path("r")), 0)
      << slurp("stderr.txt");
  const json res = load("r.json");
  const auto g = AdjacencyGraph::from_edges(el.n, el.edges);
  const auto want = oracle::bfs_distances(g, 5);
  ASSERT_EQ(res["dist"].size(), want.size());
  for (NodeId v = 0; v < el.n; ++v) EXPECT_EQ(res["dist"][v].get<Dist>(), want[v]) << v;
  EXPECT_TRUE(oracle::is_bfs_tree(g, RootedTree::from_parents(5, parents_of(res["tree"]))));
}

TEST_F(Cli, BfsCsvIsDistanceTable) {
  ASSERT_EQ(run("run --alg bfs-det --gen path:4 --p 2 --format csv --out " + path("d")), 0) << slurp("stderr.txt");
  EXPECT_EQ(slurp("d.csv"), "source,node,dist\n0,0,0\n0,1,1\n0,2,2\n0,3,3\n");
  EXPECT_TRUE(fs::exists(path("d.meter.json")));
  EXPECT_FALSE(fs::exists(path("d.json")));
}

TEST_F(Cli, MlstReportsLeafCountInMetadata) {
  const EdgeList el = gen::gnp(12, 0.35, 5);
  write_stream_file("g.txt", el, StreamModel::InsertionOnly, 2);
  ASSERT_EQ(run("run --alg mlst --stream " + path("g.txt") + " --epsilon 0.9 --out " + path("m")), 0)
      << slurp("stderr.txt");
  const json res = load("m.json");
  EXPECT_EQ(res["metadata"]["k"], 211);
  const auto t = RootedTree::from_parents(res["tree"]["root"].get<NodeId>(), parents_of(res["tree"]));
  EXPECT_EQ(res["metadata"]["leaf_count"].get<std::size_t>(), t.leaf_count());
  const auto g = AdjacencyGraph::from_edges(el.n, el.edges);
  EXPECT_TRUE(t.is_spanning_tree_of(g));
  EXPECT_GE(2 * t.leaf_count(), oracle::exact_leaf(g));
}

TEST_F(Cli, MalformedStreamLeavesNothingBehind) {
  {
    std::ofstream out(path("bad.txt"));
    out << "n 3 model ins\n+ 0 1\n++ 1 2\n";
  }
  EXPECT_EQ(run("run --alg bfs-det --stream " + path("bad.txt") + " --out " + path("out")), 6);
  EXPECT_EQ(files_starting_with("out"), 0u);
  EXPECT_EQ(run("run --alg bfs-det --stream " + path("bad.txt"), "printed.txt"), 6);
  EXPECT_TRUE(slurp("printed.txt").empty());
}

TEST_F(Cli, SameConfigSameBytes) {
  for (const std::string alg : {"bfs-rand", "mlst", "dfs-aa", "cert"}) {
    const std::string args = "run --alg " + alg + " --gen gnp:80,0.08 --seed 11 --model turn --out ";
    ASSERT_EQ(run(args + path("a")), 0) << alg << slurp("stderr.txt");
    ASSERT_EQ(run(args + path("b")), 0) << alg << slurp("stderr.txt");
    EXPECT_EQ(slurp("a.json"), slurp("b.json")) << alg;
    EXPECT_EQ(slurp("a.meter.json"), slurp("b.meter.json")) << alg;
  }
}

TEST_F(Cli, DfsOutputsParentsAndPreorder) {
  const EdgeList el = gen::gnp(60, 0.08, 9);
  write_stream_file("g.txt", el, StreamModel::InsertionOnly, 4);
  const auto g = AdjacencyGraph::from_edges(el.n, el.edges);
  for (const std::string alg : {"dfs-simple", "dfs-aa"}) {
    ASSERT_EQ(run("run --alg " + alg + " --stream " + path("g.txt") + " --root 7 --k 4 --s 2 --out " + path(alg)), 0)
        << alg << slurp("stderr.txt");
    const json res = load(alg + ".json");
    const auto t = RootedTree::from_parents(7, parents_of(res["tree"]));
    EXPECT_TRUE(oracle::is_dfs_tree(g, t)) << alg;
    EXPECT_EQ(res["preorder"].get<std::vector<std::size_t>>(), t.preorder()) << alg;
  }
}

TEST_F(Cli, SeparatorDump) {
  ASSERT_EQ(run("run --alg dfs-aa --gen gnp:100,0.05 --seed 2 --dump-separators --out " + path("x")), 0)
      << slurp("stderr.txt");
  const json sep = load("x.separators.json");
  EXPECT_EQ(sep["schema"], "separators/v1");
  ASSERT_FALSE(sep["separators"].empty());
  EXPECT_EQ(sep["separators"][0]["level"], 0);
  EXPECT_EQ(sep["separators"][0]["root"], 0);
  EXPECT_EQ(run("run --alg bfs-rand --gen path:5 --dump-separators"), 2);
}

TEST_F(Cli, CertificateIsAStream) {
  ASSERT_EQ(run("run --alg cert --gen gnp:40,0.2 --s 3 --out " + path("c")), 0) << slurp("stderr.txt");
  const GraphStream cs = read_stream_file(path("c.edges.txt"));
  EXPECT_EQ(cs.num_nodes(), 40u);
  EXPECT_LE(cs.updates_unmetered().size(), 3u * 39u);
  EXPECT_EQ(cs.updates_unmetered().size(), load("c.json")["edges"].size());
  EXPECT_EQ(run("run --alg bfs-det --stream " + path("c.edges.txt")), 0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("run --alg nope --gen path:3"), 2);
  EXPECT_EQ(run("run --alg bfs-det"), 2);
  EXPECT_EQ(run("run --alg bfs-det --gen path:3 --stream x.txt"), 2);
  EXPECT_EQ(run("run --alg steiner --gen path:5"), 2);
  EXPECT_EQ(run("run --alg steiner --gen path:5 --terminals 1,x"), 2);
  EXPECT_EQ(run("run --alg bfs-det --gen gnp:30,0.2 --model turn"), 3);
  EXPECT_EQ(run("run --alg bfs-rand --gen path:5 --root 9"), 3);
  EXPECT_EQ(run("run --alg dfs-aa --gen path:5 --k 2 --s 3"), 3);
  EXPECT_EQ(run("run --alg bfs-det --stream " + path("missing.txt")), 1);
}

TEST_F(Cli, RetryExhaustion) {
  // C = 0.05 samples too few centres for the overlay to connect.
  EXPECT_EQ(run("run --alg bfs-rand --gen gnp:200,0.02 --confidence 0.05 --attempts 2 --out " + path("r")), 4);
  EXPECT_EQ(files_starting_with("r"), 0u);
}

TEST_F(Cli, StrictBudget) {
  EXPECT_EQ(run("run --alg bfs-rand --gen gnp:100,0.05 --strict-budget --budget-words 50 --out " + path("b")), 5);
  EXPECT_EQ(files_starting_with("b"), 0u);
  // Without --strict-budget the overrun is only reported.
  ASSERT_EQ(run("run --alg bfs-rand --gen gnp:100,0.05 --budget-words 50 --out " + path("b")), 0);
  EXPECT_TRUE(load("b.meter.json")["over_budget"].get<bool>());
}

TEST_F(Cli, CalibratedBudgetsHoldOnDefaults) {
  for (const std::string alg :
       {"bfs-rand", "bfs-det", "diameter", "cert", "mlst", "sparsifier", "dfs-simple", "dfs-aa"}) {
    for (const std::string model : {"ins", "turn"}) {
      if (alg == "bfs-det" && model == "turn") continue;
      EXPECT_EQ(run("run --alg " + alg + " --gen gnp:120,0.06 --seed 5 --strict-budget --model " + model), 0)
          << alg << " " << model << ": " << slurp("stderr.txt");
    }
  }
  EXPECT_EQ(run("run --alg steiner --gen gnp:120,0.06 --terminals 0,3,9 --strict-budget"), 0);
  EXPECT_EQ(run("run --alg max-cut --gen regular:40,4 --strict-budget"), 0);
  EXPECT_EQ(run("run --alg bfs-det --gen path:20 --model turn --strict-budget"), 2);
}

TEST(Budget, Formulas) {
  EXPECT_FALSE(bench::space_budget("nope", {.n = 10}));
  EXPECT_FALSE(bench::space_budget("bfs-det", {.n = 10, .p = 2, .turnstile = true}));
  // n = 16: L = 4, so bfs-det gives 4 * (16 * 8 + 16 * 4).
  EXPECT_EQ(*bench::space_budget("bfs-det", {.n = 16, .p = 2}), 768u);
  const auto ins = *bench::space_budget("cert", {.n = 100, .s = 2});
  const auto turn = *bench::space_budget("cert", {.n = 100, .s = 2, .turnstile = true});
  EXPECT_LT(ins, turn);
}

TEST_F(Cli, BenchFilterAndUsage) {
  EXPECT_EQ(run("bench ''"), 2);
  EXPECT_EQ(run("bench nightly"), 2);
  EXPECT_EQ(run("bench acceptance --criterion 99"), 2);
  ASSERT_EQ(run("bench acceptance --criterion 4 --out " + path("rep.json"), "lines.txt"), 0) << slurp("stderr.txt");
  const std::string lines = slurp("lines.txt");
  EXPECT_EQ(lines.rfind("PASS [4]", 0), 0u) << lines;
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 1);
  const json rep = load("rep.json");
  EXPECT_EQ(rep["schema"], "bench/v1");
  ASSERT_EQ(rep["criteria"].size(), 1u);
  EXPECT_EQ(rep["criteria"][0]["id"], 4);
  ASSERT_EQ(run("bench acceptance --criterion 4 --criterion 14 --json", "rep2.json"), 0);
  EXPECT_EQ(load("rep2.json")["criteria"].size(), 2u);
}
