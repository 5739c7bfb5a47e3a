// Builds a random graph, streams it, and runs two of the algorithms on the
// same stream with separate meters.
#include <cstdio>

#include "semistream/semistream.hpp"

int main() {
  using namespace semistream;

  const EdgeList el = gen::gnp(400, 0.02, 17);
  const GraphStream stream = make_stream(el, StreamModel::InsertionOnly, 17);

  Meter bfs_meter;
  const std::size_t k = 60;
  const BfsResult bfs = with_retries(17, 3, [&](std::uint64_t seed) {
    return bfs_randomized(stream, bfs_meter, 0, k, {.confidence = 3.0, .seed = seed});
  });
  std::printf("bfs: height %u, %llu passes, %zu words peak\n", static_cast<unsigned>(bfs.tree.height()),
              static_cast<unsigned long long>(bfs_meter.passes()), bfs_meter.words_peak());

  const AdjacencyGraph g = AdjacencyGraph::from_edges(el.n, el.edges);
  std::printf("bfs: matches in-memory BFS: %s\n", oracle::bfs_distances(g, 0) == bfs.dist ? "yes" : "no");

  Meter mlst_meter;
  const MlstResult mlst = approx_mlst(stream, mlst_meter, 0.9, {.seed = 17});
  std::printf("mlst: %zu leaves (k = %zu, %zu sparsifier edges), %llu pass, %zu words peak\n", mlst.tree.leaf_count(),
              mlst.k, mlst.sparsifier_edges, static_cast<unsigned long long>(mlst_meter.passes()),
              mlst_meter.words_peak());
  return 0;
}
