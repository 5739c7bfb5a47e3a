#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "semistream/harness/generators.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/harness/report.hpp"
#include "semistream/harness/stream_io.hpp"
#include "semistream/oracle/distances.hpp"

using namespace semistream;

namespace {

GraphStream p3() { return GraphStream::insertion_only(3, {Edge(0, 1), Edge(1, 2)}); }

}  // namespace

TEST(PassReader, YieldsUpdatesAndCountsOnePass) {
  const auto s = p3();
  Meter m;
  std::vector<EdgeUpdate> seen;
  stream_pass(s, m, [&](const EdgeUpdate& up) { seen.push_back(up); });
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0].edge(), Edge(0, 1));
  EXPECT_EQ(seen[1].edge(), Edge(1, 2));
  EXPECT_EQ(m.passes(), 1u);
}

TEST(PassReader, EmptyStreamStillCountsAPass) {
  const GraphStream s(4, {}, StreamModel::InsertionOnly);
  Meter m;
  int count = 0;
  stream_pass(s, m, [&](const EdgeUpdate&) { ++count; });
  EXPECT_EQ(count, 0);
  EXPECT_EQ(m.passes(), 1u);
}

TEST(PassReader, SecondPassWhileFirstOpenFailsFast) {
  const auto s = p3();
  Meter m;
  PassReader first(s, m);
  EXPECT_THROW(PassReader second(s, m), std::logic_error);
}

TEST(PassReader, AbandonedReaderStillCountsAndReleases) {
  const auto s = p3();
  Meter m;
  {
    PassReader r(s, m);
    for (const auto& up : r) {
      (void)up;
      break;
    }
  }
  EXPECT_EQ(m.passes(), 1u);
  EXPECT_FALSE(m.pass_open());
  stream_pass(s, m, [](const EdgeUpdate&) {});
  EXPECT_EQ(m.passes(), 2u);
}

TEST(PassReader, ReplayIsIdentical) {
  const auto s = make_stream(gen::gnp(40, 0.2, 3), StreamModel::Turnstile, 5);
  Meter m;
  std::vector<EdgeUpdate> a, b;
  stream_pass(s, m, [&](const EdgeUpdate& up) { a.push_back(up); });
  stream_pass(s, m, [&](const EdgeUpdate& up) { b.push_back(up); });
  EXPECT_EQ(a, b);
}

TEST(Materialize, TurnstileArithmetic) {
  const GraphStream s(3, {{0, 1, +1}, {0, 2, +1}, {0, 1, -1}}, StreamModel::Turnstile);
  const auto g = materialize(s);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{Edge(0, 2)}));
}

TEST(Materialize, InsertAndDeleteKeepsOtherEdge) {
  const GraphStream s(3, {{0, 1, +1}, {1, 2, +1}, {0, 1, -1}}, StreamModel::Turnstile);
  EXPECT_EQ(materialize(s).edges(), (std::vector<Edge>{Edge(1, 2)}));
}

TEST(Materialize, TriangleHasThreeEdges) {
  EXPECT_EQ(materialize(make_stream(gen::complete(3), StreamModel::InsertionOnly, 1)).num_edges(), 3u);
}

TEST(Materialize, DuplicateInsertIsMalformed) {
  const GraphStream s(2, {{0, 1, +1}, {1, 0, +1}}, StreamModel::Turnstile);
  EXPECT_THROW(materialize(s), MalformedStream);
}

TEST(Materialize, DeleteBeforeInsertIsMalformed) {
  const GraphStream s(2, {{0, 1, -1}, {0, 1, +1}}, StreamModel::Turnstile);
  EXPECT_THROW(materialize(s), MalformedStream);
}

TEST(GraphStream, RejectsBadUpdates) {
  EXPECT_THROW(GraphStream(2, {{0, 2, +1}}, StreamModel::InsertionOnly), MalformedStream);
  EXPECT_THROW(GraphStream(2, {{1, 1, +1}}, StreamModel::InsertionOnly), MalformedStream);
  EXPECT_THROW(GraphStream(2, {{0, 1, -1}}, StreamModel::InsertionOnly), MalformedStream);
}

TEST(Meter, PeakCoversEveryBoundary) {
  // Instrumented double: a container whose size changes inside passes.
  const auto s = make_stream(gen::gnp(30, 0.3, 1), StreamModel::InsertionOnly, 1);
  Meter m;
  std::vector<int> held;
  auto acct = m.track("held", [&] { return held.size(); });
  std::size_t prev_peak = 0;
  std::vector<std::size_t> at_boundary;
  for (int pass = 0; pass < 5; ++pass) {
    stream_pass(s, m, [&](const EdgeUpdate& up) {
      if ((up.u + pass) % 3 == 0) held.push_back(1);
    });
    at_boundary.push_back(held.size());
    EXPECT_GE(m.words_peak(), m.words_current());
    EXPECT_GE(m.words_peak(), prev_peak);
    prev_peak = m.words_peak();
    if (pass == 2) held.clear();
  }
  for (std::size_t w : at_boundary) EXPECT_GE(m.words_peak(), w);
  EXPECT_EQ(m.passes(), 5u);
}

TEST(Meter, ReleasedAccountsStopCharging) {
  Meter m;
  {
    auto a = m.track("a", [] { return std::size_t{10}; });
    m.checkpoint();
    EXPECT_EQ(m.words_current(), 10u);
  }
  m.checkpoint();
  EXPECT_EQ(m.words_current(), 0u);
  EXPECT_EQ(m.words_peak(), 10u);
}

TEST(Meter, StrictBudgetThrowsAdvisoryReports) {
  const auto s = p3();
  {
    Meter m;
    m.set_budget(5, true);
    auto a = m.track("big", [] { return std::size_t{6}; });
    EXPECT_THROW(stream_pass(s, m, [](const EdgeUpdate&) {}), BudgetExceeded);
  }
  {
    Meter m;
    m.set_budget(5, false);
    auto a = m.track("big", [] { return std::size_t{6}; });
    stream_pass(s, m, [](const EdgeUpdate&) {});
    EXPECT_TRUE(m.over_budget());
  }
}

TEST(Meter, JsonReportSchema) {
  Meter m;
  stream_pass(p3(), m, [](const EdgeUpdate&) {});
  const auto j = meter_json(m, "bfs-det", {{"p", 2}});
  EXPECT_EQ(j["schema"], "meter/v1");
  EXPECT_EQ(j["passes"], 1);
  EXPECT_EQ(j["algorithm"], "bfs-det");
  EXPECT_EQ(j["params"]["p"], 2);
  EXPECT_TRUE(j.contains("words_peak"));
}

TEST(StreamIo, RoundTrip) {
  const auto s = make_stream(gen::cycle(6), StreamModel::Turnstile, 9);
  std::ostringstream out;
  write_stream(out, s);
  const auto back = parse_stream(out.str());
  EXPECT_EQ(back.num_nodes(), 6u);
  EXPECT_TRUE(back.turnstile());
  EXPECT_EQ(back.updates_unmetered(), s.updates_unmetered());
}

TEST(StreamIo, CommentsAndBlankLines) {
  const auto s = parse_stream("# fixture\n\nn 3 model ins  # header\n+ 0 1\n+ 1 2 # tail\n");
  EXPECT_EQ(s.num_updates(), 2u);
}

TEST(StreamIo, MalformedLinesAreRejected) {
  EXPECT_THROW(parse_stream("n 3 model ins\n++ 1 2\n"), MalformedStream);
  EXPECT_THROW(parse_stream("n 3 model ins\n+ 1\n"), MalformedStream);
  EXPECT_THROW(parse_stream("n 3 model ins\n+ 0 x\n"), MalformedStream);
  EXPECT_THROW(parse_stream("+ 0 1\n"), MalformedStream);
  EXPECT_THROW(parse_stream("n 3 model sliding\n"), MalformedStream);
  EXPECT_THROW(parse_stream("n 3 model ins\n- 0 1\n"), MalformedStream);
  EXPECT_THROW(parse_stream("n 3 model ins\n+ 0 3\n"), MalformedStream);
  EXPECT_THROW(parse_stream(""), MalformedStream);
}

TEST(Generators, SmallShapes) {
  EXPECT_EQ(gen::path(4).edges, (std::vector<Edge>{Edge(0, 1), Edge(1, 2), Edge(2, 3)}));
  EXPECT_EQ(gen::star(6).edges.size(), 5u);
  EXPECT_EQ(gen::cycle(8).edges.size(), 8u);
  EXPECT_EQ(gen::petersen().edges.size(), 15u);
  const auto pg = AdjacencyGraph::from_edges(10, gen::petersen().edges);
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(pg.degree(v), 3u);
  EXPECT_EQ(make_stream(gen::path(4), StreamModel::InsertionOnly, 1).num_updates(), 3u);
}

TEST(Generators, EmittedGraphsAreConnectedAndSimple) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& el : {gen::gnp(50, 0.02, seed), gen::gnp(30, 0.5, seed), gen::random_regular(12, 4, seed),
                           gen::random_regular(20, 3, seed), gen::random_regular(9, 2, seed),
                           gen::layered_blocks(40, 3), gen::index_hard(3, 2, seed % 2 == 0, seed)}) {
      const auto s = make_stream(el, seed % 2 ? StreamModel::Turnstile : StreamModel::InsertionOnly, seed);
      const auto g = materialize(s);
      EXPECT_TRUE(oracle::is_connected(g));
      EXPECT_EQ(g.num_edges(), el.edges.size());
    }
  }
}

TEST(Generators, RegularGraphsAreRegular) {
  const auto el = gen::random_regular(12, 4, 7);
  const auto g = AdjacencyGraph::from_edges(el.n, el.edges);
  for (NodeId v = 0; v < 12; ++v) EXPECT_EQ(g.degree(v), 4u);
}

TEST(Generators, DeterministicUnderSeed) {
  EXPECT_EQ(gen::gnp(60, 0.1, 42).edges, gen::gnp(60, 0.1, 42).edges);
  EXPECT_NE(gen::gnp(60, 0.1, 42).edges, gen::gnp(60, 0.1, 43).edges);
  const auto a = make_stream(gen::gnp(60, 0.1, 42), StreamModel::Turnstile, 3);
  const auto b = make_stream(gen::gnp(60, 0.1, 42), StreamModel::Turnstile, 3);
  EXPECT_EQ(a.updates_unmetered(), b.updates_unmetered());
}

TEST(Generators, InfeasibleParameters) {
  EXPECT_THROW(gen::random_regular(7, 3, 1), DomainError);
  EXPECT_THROW(gen::random_regular(4, 4, 1), DomainError);
  EXPECT_THROW(gen::cycle(2), DomainError);
  EXPECT_THROW(generate("nosuch:3", 1), DomainError);
  EXPECT_THROW(generate("gnp:10", 1), DomainError);
}

TEST(Generators, SpecStringsParse) {
  EXPECT_EQ(generate("path:5", 0).edges.size(), 4u);
  EXPECT_EQ(generate("gnp:20,0.3", 4).edges, gen::gnp(20, 0.3, 4).edges);
  EXPECT_EQ(generate("index_hard:2,1,1", 4).n, 13u);
}

TEST(Generators, ChurnKeepsFinalGraph) {
  const auto el = gen::gnp(40, 0.15, 11);
  const auto s = with_churn(el.n, el.edges, 2, 0.8);
  EXPECT_GT(s.num_updates(), el.edges.size());
  EXPECT_EQ(final_edges(s), el.edges);
}

TEST(Generators, LayeredBlocksNearTightDegreeSum) {
  // Walk the deepest root-to-leaf path of an oracle BFS tree rooted at V_0.
  const auto el = gen::layered_blocks(1000, 25);
  const auto g = AdjacencyGraph::from_edges(el.n, el.edges);
  const auto d = oracle::bfs_distances(g, 0);
  NodeId deepest = 0;
  for (NodeId v = 0; v < el.n; ++v) {
    if (d[v] > d[deepest]) deepest = v;
  }
  std::size_t sum = 0;
  for (NodeId x = deepest;;) {
    sum += g.degree(x);
    if (x == 0) break;
    for (NodeId y : g.neighbors(x)) {
      if (d[y] + 1 == d[x]) {
        x = y;
        break;
      }
    }
  }
  EXPECT_EQ(d[deepest], 40u);  // k = ceil(999 / 25)
  EXPECT_GE(sum, 2500u);
  EXPECT_LE(sum, 3000u);
}
