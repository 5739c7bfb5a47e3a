#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "semistream/harness/generators.hpp"
#include "semistream/oracle/checks.hpp"
#include "semistream/sketch/forest_sketch.hpp"
#include "semistream/sketch/l0_sampler.hpp"
#include "semistream/sketch/matching.hpp"

using namespace semistream;

TEST(L0Sketch, InsertThenDeleteRestoresFreshState) {
  L0Sketch a(100, 7), fresh(100, 7);
  a.update(5, +1);
  EXPECT_FALSE(a == fresh);
  a.update(5, -1);
  EXPECT_TRUE(a == fresh);
  EXPECT_EQ(a.query().status, L0Status::Empty);
}

TEST(L0Sketch, EmptyAndSingletons) {
  L0Sketch a(64, 1);
  EXPECT_EQ(a.query().status, L0Status::Empty);
  a.update(7, +1);
  const auto r = a.query();
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.index, 7u);
  EXPECT_EQ(r.value, 1);
  L0Sketch b(64, 2);
  b.update(3, +1);
  EXPECT_EQ(b.query().index, 3u);
}

TEST(L0Sketch, ChurnEndingAtTwoItems) {
  int good = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    L0Sketch a(50, static_cast<std::uint64_t>(t));
    auto rng = make_rng(static_cast<std::uint64_t>(t), "churn");
    std::set<std::uint64_t> live;
    for (int step = 0; step < 60; ++step) {
      const auto x = uniform_int(rng, 0, 49);
      if (live.count(x)) {
        a.update(x, -1);
        live.erase(x);
      } else {
        a.update(x, +1);
        live.insert(x);
      }
    }
    for (auto x : std::vector<std::uint64_t>(live.begin(), live.end())) {
      if (x != 2 && x != 9) a.update(x, -1);
    }
    if (!live.count(2)) a.update(2, +1);
    if (!live.count(9)) a.update(9, +1);
    const auto r = a.query();
    good += r.found() && (r.index == 2 || r.index == 9);
  }
  EXPECT_GE(good, 990);
}

TEST(L0Sketch, UniformOverSupportOfFour) {
  std::map<std::uint64_t, int> hits;
  const int queries = 10000;
  for (int q = 0; q < queries; ++q) {
    L0Sketch a(1000, derive_seed(77, "uniform", q));
    for (std::uint64_t x : {1, 2, 3, 4}) a.update(x, +1);
    const auto r = a.query();
    if (r.found()) ++hits[r.index];
  }
  int total = 0;
  for (auto& [k, v] : hits) total += v;
  ASSERT_GE(total, queries * 99 / 100);
  double chi = 0;
  for (std::uint64_t x : {1, 2, 3, 4}) {
    const double expect = total / 4.0;
    chi += (hits[x] - expect) * (hits[x] - expect) / expect;
  }
  EXPECT_LT(chi, 11.345);  // chi-square, 3 dof, 99%
}

TEST(L0Sketch, LinearityIsBitExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    L0Sketch a(500, seed), fresh(500, seed);
    auto rng = make_rng(seed, "linearity");
    std::vector<std::pair<std::uint64_t, int>> ops;
    for (int i = 0; i < 40; ++i) ops.emplace_back(uniform_int(rng, 0, 499), bernoulli(rng, 0.5) ? 1 : -1);
    for (auto [x, d] : ops) a.update(x, d);
    std::reverse(ops.begin(), ops.end());
    for (auto [x, d] : ops) a.update(x, -d);
    EXPECT_TRUE(a == fresh);
  }
}

TEST(L0Sketch, MergeEqualsSketchOfSum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = make_rng(seed, "merge");
    L0Sketch a(300, seed), b(300, seed), whole(300, seed);
    for (int i = 0; i < 30; ++i) {
      const auto x = uniform_int(rng, 0, 299);
      const int d = bernoulli(rng, 0.5) ? 1 : -1;
      (bernoulli(rng, 0.5) ? a : b).update(x, d);
      whole.update(x, d);
    }
    a += b;
    EXPECT_TRUE(a == whole);
    a -= b;
    a -= a;
    EXPECT_EQ(a.query().status, L0Status::Empty);
  }
}

TEST(L0Sketch, DistinctRecoveryWithBuckets) {
  L0Params prm;
  prm.buckets = 16;
  prm.levels = L0Params::levels_for(200);
  L0Sketch a(200, 3, prm);
  for (std::uint64_t x = 10; x < 40; ++x) a.update(x, +1);
  const auto got = a.recover_all();
  EXPECT_GE(got.size(), 8u);
  for (auto x : got) EXPECT_TRUE(x >= 10 && x < 40);
  EXPECT_EQ(a.total(), 30);
}

TEST(L0Sketch, SerializationRoundTrip) {
  L0Sketch a(1000, 5);
  for (std::uint64_t x : {1, 500, 999}) a.update(x, +1);
  std::stringstream buf;
  a.serialize(buf);
  EXPECT_EQ(buf.str().substr(0, 4), "L0S1");
  const auto b = L0Sketch::deserialize(buf);
  EXPECT_TRUE(a == b);
  std::stringstream bad("XXXX");
  EXPECT_THROW(L0Sketch::deserialize(bad), std::runtime_error);
}

namespace {

ForestSketch sketch_stream(const GraphStream& s, std::uint64_t seed) {
  ForestSketch fs(s.num_nodes(), seed);
  for (const auto& up : s.updates_unmetered()) fs.update(up.u, up.v, up.sign);
  return fs;
}

}  // namespace

TEST(ForestSketch, PathIsRecoveredExactly) {
  const auto fs = sketch_stream(make_stream(gen::path(4), StreamModel::Turnstile, 1), 3);
  const auto f = fs.decode();
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, (std::vector<Edge>{Edge(0, 1), Edge(1, 2), Edge(2, 3)}));
}

TEST(ForestSketch, CycleWithDeletedEdge) {
  const GraphStream s(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {3, 0, -1}}, StreamModel::Turnstile);
  const auto f = sketch_stream(s, 8).decode();
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, (std::vector<Edge>{Edge(0, 1), Edge(1, 2), Edge(2, 3)}));
}

TEST(ForestSketch, RandomGraphsSpanningAndAcyclic) {
  int ok = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto el = t % 2 ? gen::gnp(100, 0.1, t) : gen::gnp(200, 0.03, t);
    const auto s = make_stream(el, StreamModel::Turnstile, t);
    const auto g = materialize(s);
    const auto f = sketch_stream(s, derive_seed(t, "fs")).decode();
    if (f) {
      EXPECT_TRUE(oracle::is_spanning_forest(g, *f));
      ok += oracle::is_spanning_forest(g, *f);
    }
  }
  EXPECT_GE(ok, 99);
}

TEST(ForestSketch, DisconnectedGraphGivesForest) {
  std::vector<Edge> es = {Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(5, 6), Edge(6, 7), Edge(5, 7)};
  const auto s = with_churn(9, es, 4);
  const auto f = sketch_stream(s, 2).decode();
  ASSERT_TRUE(f);
  EXPECT_TRUE(oracle::is_spanning_forest(AdjacencyGraph::from_edges(9, es), *f));
}

TEST(ForestSketch, MaskRestrictsToInducedSubgraph) {
  const auto el = gen::cycle(6);
  std::vector<bool> mask = {true, true, true, false, true, true};
  ForestSketch fs(6, 1, {}, mask);
  for (const Edge& e : el.edges) fs.update(e.u, e.v, +1);
  const auto f = fs.decode();
  ASSERT_TRUE(f);
  // Removing node 3 leaves the path 4-5-0-1-2.
  EXPECT_EQ(f->size(), 4u);
  for (const Edge& e : *f) EXPECT_TRUE(e.u != 3 && e.v != 3);
}

TEST(ForestSketch, PeelingBySubtraction) {
  const auto el = gen::complete(6);
  ForestSketch fs(6, 9);
  for (const Edge& e : el.edges) fs.update(e.u, e.v, +1);
  const auto f1 = fs.decode_or_throw();
  for (const Edge& e : f1) fs.subtract(e);
  const auto f2 = fs.decode_or_throw();
  for (const Edge& e : f2) EXPECT_FALSE(std::binary_search(f1.begin(), f1.end(), e));
  EXPECT_EQ(f2.size(), 5u);
}

TEST(ForestSketch, SerializationRoundTrip) {
  const auto fs = sketch_stream(make_stream(gen::gnp(20, 0.2, 1), StreamModel::Turnstile, 1), 4);
  std::stringstream buf;
  fs.serialize(buf);
  EXPECT_EQ(buf.str().substr(0, 4), "FSK1");
  const auto back = ForestSketch::deserialize(buf);
  EXPECT_TRUE(back == fs);
  EXPECT_EQ(back.decode(), fs.decode());
}

TEST(Matching, PathOfThreeGetsOneEdge) {
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    Meter m;
    const auto s = make_stream(gen::path(3), model, 2);
    const auto mm = maximal_matching(s, m, {}, {.seed = 1});
    ASSERT_EQ(mm.size(), 1u);
    EXPECT_TRUE(mm[0] == Edge(0, 1) || mm[0] == Edge(1, 2));
  }
}

TEST(Matching, PerfectMatchingInputKeepsAllEdges) {
  const std::vector<Edge> es = {Edge(0, 1), Edge(2, 3), Edge(4, 5)};
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    Meter m;
    const auto s = make_stream(EdgeList{6, es}, model, 3);
    EXPECT_EQ(maximal_matching(s, m, {}, {.seed = 4}), es);
  }
}

TEST(Matching, RandomGraphsMaximal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
      const auto s = make_stream(gen::gnp(60, 0.2, seed), model, seed);
      const auto g = materialize(s);
      Meter m;
      const auto mm = maximal_matching(s, m, {}, {.seed = seed});
      EXPECT_TRUE(oracle::is_maximal_matching(g, mm, [](NodeId, NodeId) { return true; }));
      if (model == StreamModel::InsertionOnly) {
        EXPECT_EQ(m.passes(), 1u);
      }
    }
  }
}

TEST(Matching, BipartiteFilter) {
  const auto s = make_stream(gen::gnp(40, 0.2, 5), StreamModel::Turnstile, 5);
  const auto g = materialize(s);
  MatchingFilter f{[](NodeId v) { return v < 10; }, [](NodeId v) { return v >= 25; }};
  Meter m;
  const auto mm = maximal_matching(s, m, f, {.seed = 3});
  EXPECT_TRUE(oracle::is_maximal_matching(g, mm, [&](NodeId a, NodeId b) { return f.candidate(a, b); }));
}
