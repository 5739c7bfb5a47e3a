#pragma once

#include "semistream/core/graph.hpp"
#include "semistream/core/rng.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/core/types.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/harness/generators.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/harness/pass_mux.hpp"
#include "semistream/harness/report.hpp"
#include "semistream/harness/stream.hpp"
#include "semistream/harness/stream_io.hpp"
#include "semistream/harness/task.hpp"
#include "semistream/sketch/forest_sketch.hpp"
#include "semistream/sketch/hash.hpp"
#include "semistream/sketch/l0_sampler.hpp"
#include "semistream/sketch/matching.hpp"
#include "semistream/sketch/serialize.hpp"
#include "semistream/cert/certificate.hpp"
#include "semistream/cert/degree_truncation.hpp"
#include "semistream/mlst/approx.hpp"
#include "semistream/mlst/dead_leaf.hpp"
#include "semistream/mlst/max_cut.hpp"
#include "semistream/mlst/sparsifier.hpp"
#include "semistream/bfs/common.hpp"
#include "semistream/bfs/deterministic.hpp"
#include "semistream/bfs/diameter.hpp"
#include "semistream/bfs/local_wave.hpp"
#include "semistream/bfs/randomized.hpp"
#include "semistream/bfs/steiner.hpp"
#include "semistream/dfs/dfs_aa.hpp"
#include "semistream/dfs/dfs_simple.hpp"
#include "semistream/dfs/initial_segment.hpp"
#include "semistream/dfs/lane_ops.hpp"
#include "semistream/dfs/maximal_paths.hpp"
#include "semistream/dfs/node_flow.hpp"
#include "semistream/dfs/path_system.hpp"
#include "semistream/dfs/reduce.hpp"
#include "semistream/oracle/budget.hpp"
#include "semistream/oracle/cache.hpp"
#include "semistream/oracle/checks.hpp"
#include "semistream/oracle/connectivity.hpp"
#include "semistream/oracle/cut.hpp"
#include "semistream/oracle/dfs_check.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/leaf.hpp"
#include "semistream/oracle/maximality.hpp"
#include "semistream/oracle/steiner.hpp"
#include "semistream/bench/budget.hpp"
#include "semistream/bench/criteria.hpp"
