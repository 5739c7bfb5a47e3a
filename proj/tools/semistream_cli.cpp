#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semistream/semistream.hpp"

namespace {

using semistream::Dist;
using semistream::NodeId;
using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // I/O trouble, or a bench criterion failed
  kUsage = 2,
  kDomain = 3,
  kRetriesExhausted = 4,
  kBudget = 5,
  kMalformed = 6,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string alg;
  std::string stream_path;
  std::string gen_spec;
  std::string model = "ins";
  std::uint64_t seed = 0;
  std::optional<std::size_t> k;
  std::optional<std::size_t> s;
  std::optional<std::size_t> p;
  std::optional<double> epsilon;
  double confidence = 3.0;
  std::string terminals;
  NodeId root = 0;
  bool strict = false;
  std::optional<std::size_t> budget_words;
  unsigned attempts = 3;
  std::string out;
  std::string format = "json";
  bool dump_separators = false;
};

const std::vector<std::string> kAlgorithms{"bfs-rand", "bfs-det",    "diameter", "steiner", "cert",
                                           "mlst",     "sparsifier", "max-cut",  "dfs-simple", "dfs-aa"};

// One file of the run, written only once every file of the run is ready.
struct Artifact {
  std::string suffix;
  std::string body;
};

struct RunOutput {
  json result;
  json meter;
  std::string csv;
  std::string edge_list;  // cert only, in the stream format
  json separators;        // dfs-aa with --dump-separators
};

json dist_json(const std::vector<Dist>& d) {
  json a = json::array();
  for (Dist x : d) {
    if (x == semistream::kInfDist) {
      a.push_back(nullptr);
    } else {
      a.push_back(x);
    }
  }
  return a;
}

json edges_json(const std::vector<semistream::Edge>& edges) {
  json a = json::array();
  for (const auto& e : edges) a.push_back({e.u, e.v});
  return a;
}

std::string edges_csv(const std::vector<semistream::Edge>& edges) {
  std::ostringstream o;
  o << "u,v\n";
  for (const auto& e : edges) o << e.u << ',' << e.v << '\n';
  return o.str();
}

std::string tree_csv(const semistream::RootedTree& t, const std::vector<std::size_t>* preorder) {
  std::ostringstream o;
  o << "node,parent,depth" << (preorder != nullptr ? ",preorder" : "") << '\n';
  for (NodeId v = 0; v < t.size(); ++v) {
    o << v << ',';
    if (t.parent(v) != semistream::kNoNode) o << t.parent(v);
    o << ',' << t.depth(v);
    if (preorder != nullptr) o << ',' << (*preorder)[v];
    o << '\n';
  }
  return o.str();
}

std::string scalars_csv(const json& j) {
  std::ostringstream o;
  o << "key,value\n";
  for (const auto& [key, val] : j.items()) {
    if (val.is_primitive()) o << key << ',' << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
  }
  return o.str();
}

std::vector<NodeId> parse_terminals(const std::string& text) {
  std::vector<NodeId> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) throw UsageError("--terminals expects a comma list of node ids, got '" + text + "'");
    out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

semistream::GraphStream load_stream(const RunConfig& cfg) {
  if (!cfg.stream_path.empty()) return semistream::read_stream_file(cfg.stream_path);
  const auto model = cfg.model == "turn" ? semistream::StreamModel::Turnstile : semistream::StreamModel::InsertionOnly;
  const auto el = semistream::generate(cfg.gen_spec, semistream::derive_seed(cfg.seed, "cli.gen"));
  return semistream::make_stream(el, model, semistream::derive_seed(cfg.seed, "cli.order"));
}

std::size_t ceil_sqrt(std::size_t n) { return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))); }

RunOutput run_algorithm(const RunConfig& cfg, const semistream::GraphStream& stream) {
  using namespace semistream;
  const std::size_t n = stream.num_nodes();
  const std::vector<NodeId> terms = parse_terminals(cfg.terminals);
  const double eps = cfg.epsilon.value_or(0.9);

  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t p = 0;
  if (cfg.alg == "bfs-rand" || cfg.alg == "diameter" || cfg.alg == "steiner") {
    k = cfg.k.value_or(bench::detail::sqrt_log_k(n));
  } else if (cfg.alg == "bfs-det") {
    p = cfg.p.value_or(4);
  } else if (cfg.alg == "cert") {
    s = cfg.s.value_or(2);
  } else if (cfg.alg == "mlst" || cfg.alg == "sparsifier" || cfg.alg == "max-cut") {
    k = sparsifier_k(eps);
  } else if (cfg.alg == "dfs-simple") {
    k = cfg.k.value_or(ceil_sqrt(n));
  } else if (cfg.alg == "dfs-aa") {
    k = cfg.k.value_or(11);
    s = cfg.s.value_or(3);
  }
  if (cfg.alg == "steiner" && terms.empty()) throw UsageError("steiner needs --terminals");
  if (cfg.alg != "steiner" && !terms.empty()) throw UsageError("--terminals only applies to steiner");
  if (cfg.alg == "cert" && (s == 0 || s > 64)) throw DomainError("cert needs 1 <= s <= 64");

  json params;
  params["seed"] = cfg.seed;
  params["model"] = to_string(stream.model());
  params["n"] = n;
  if (k != 0 && cfg.alg != "mlst" && cfg.alg != "sparsifier" && cfg.alg != "max-cut") params["k"] = k;
  if (s != 0) params["s"] = s;
  if (p != 0) params["p"] = p;
  if (cfg.alg == "mlst" || cfg.alg == "sparsifier" || cfg.alg == "max-cut") params["epsilon"] = eps;
  if (cfg.alg == "bfs-rand" || cfg.alg == "diameter" || cfg.alg == "steiner") params["confidence"] = cfg.confidence;
  if (cfg.alg == "steiner") params["terminals"] = terms;
  if (cfg.alg == "bfs-rand" || cfg.alg == "bfs-det" || cfg.alg == "dfs-simple" || cfg.alg == "dfs-aa") {
    params["root"] = cfg.root;
  }
  params["attempts"] = cfg.attempts;

  Meter meter;
  auto budget = bench::space_budget(
      cfg.alg, {.n = n, .k = k, .s = s, .p = p, .terminals = terms.size(), .turnstile = stream.turnstile()});
  if (cfg.budget_words) budget = cfg.budget_words;
  if (budget) {
    meter.set_budget(*budget, cfg.strict);
  } else if (cfg.strict) {
    throw UsageError("no calibrated budget for " + cfg.alg + " on " + to_string(stream.model()) + " streams");
  }

  RunOutput out;
  json& res = out.result;
  res["algorithm"] = cfg.alg;
  res["params"] = params;

  const auto bfs_opt = [&](std::uint64_t sd) {
    return RandomizedBfsOptions{.confidence = cfg.confidence, .seed = sd};
  };
  const auto bfs_out = [&](const BfsResult& b) {
    res["source"] = b.source;
    res["tree"] = tree_json(b.tree);
    res["dist"] = dist_json(b.dist);
    std::ostringstream o;
    o << "source,node,dist\n";
    for (NodeId v = 0; v < n; ++v) {
      o << b.source << ',' << v << ',';
      if (b.dist[v] != kInfDist) o << b.dist[v];
      o << '\n';
    }
    out.csv = o.str();
  };
  const auto dfs_out = [&](const RootedTree& t) {
    res["tree"] = tree_json(t);
    const auto pre = t.preorder();
    res["preorder"] = pre;
    out.csv = tree_csv(t, &pre);
  };

  with_retries(cfg.seed, cfg.attempts, [&](std::uint64_t sd) {
    if (cfg.alg == "bfs-rand") {
      bfs_out(bfs_randomized(stream, meter, cfg.root, k, bfs_opt(sd)));
    } else if (cfg.alg == "bfs-det") {
      bfs_out(bfs_deterministic(stream, meter, cfg.root, p));
    } else if (cfg.alg == "diameter") {
      res["diameter_estimate"] = diameter_approx(stream, meter, k, bfs_opt(sd));
      out.csv = scalars_csv(res);
    } else if (cfg.alg == "steiner") {
      const auto st = steiner_2approx(stream, meter, terms, k, bfs_opt(sd));
      res["terminals"] = st.terminals;
      res["cost"] = st.cost();
      res["edges"] = edges_json(st.edges);
      out.csv = edges_csv(st.edges);
    } else if (cfg.alg == "cert") {
      const auto c = vc_certificate(stream, meter, static_cast<unsigned>(s), sd);
      res["s"] = c.s;
      res["kind"] = c.provenance == CertificateKind::ForestDecomposition ? "forest-decomposition" : "stacked-sketch";
      res["edges"] = edges_json(c.edges);
      out.csv = edges_csv(c.edges);
      std::ostringstream el;
      write_edge_list(el, n, c.edges);
      out.edge_list = el.str();
    } else if (cfg.alg == "mlst") {
      const auto m = approx_mlst(stream, meter, eps, {.seed = sd});
      res["tree"] = tree_json(m.tree);
      res["metadata"] = {{"leaf_count", m.tree.leaf_count()}, {"k", m.k}, {"sparsifier_edges", m.sparsifier_edges}};
      out.csv = tree_csv(m.tree, nullptr);
    } else if (cfg.alg == "sparsifier") {
      const auto sp = build_sparsifier(stream, meter, eps, {.seed = sd});
      res["k"] = sp.k;
      res["guarantee"] = sp.guarantee;
      res["edges"] = edges_json(sp.edges);
      out.csv = edges_csv(sp.edges);
    } else if (cfg.alg == "max-cut") {
      const auto c = connected_max_cut(stream, meter, eps, sd);
      res["left"] = c.left;
      res["right"] = c.right;
      res["cut_value"] = c.cut_value;
      res["witness"] = tree_json(c.witness);
      std::ostringstream o;
      o << "node,side\n";
      std::vector<char> side(n, 'R');
      for (NodeId v : c.left) side[v] = 'L';
      for (NodeId v = 0; v < n; ++v) o << v << ',' << side[v] << '\n';
      out.csv = o.str();
    } else if (cfg.alg == "dfs-simple") {
      dfs_out(dfs_simple(stream, meter, cfg.root, k, {.seed = sd}));
    } else if (cfg.alg == "dfs-aa") {
      DfsAaStats st;
      json seps = json::array();
      if (cfg.dump_separators) {
        st.on_separator = [&](std::size_t level, NodeId root, const std::vector<Path>& paths) {
          seps.push_back({{"level", level}, {"root", root}, {"paths", paths}});
        };
      }
      dfs_out(dfs_aa(stream, meter, cfg.root, k, s, {.seed = sd}, &st));
      if (cfg.dump_separators) {
        out.separators["schema"] = "separators/v1";
        out.separators["separators"] = std::move(seps);
      }
    }
    return 0;
  });
  out.meter = meter_json(meter, cfg.alg, params);
  return out;
}

void write_all(const std::string& prefix, const std::vector<Artifact>& files) {
  std::vector<std::string> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) std::filesystem::remove(t);
  };
  for (const auto& f : files) {
    const std::string tmp = prefix + f.suffix + ".partial";
    temps.push_back(tmp);
    std::ofstream o(tmp, std::ios::binary);
    o << f.body;
    o.close();
    if (!o) {
      cleanup();
      throw std::runtime_error("cannot write " + prefix + f.suffix);
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) std::filesystem::rename(temps[i], prefix + files[i].suffix);
}

int do_run(const RunConfig& cfg) {
  if (cfg.dump_separators && cfg.alg != "dfs-aa") throw UsageError("--dump-separators only applies to dfs-aa");
  const auto stream = load_stream(cfg);
  RunOutput r = run_algorithm(cfg, stream);
  if (cfg.out.empty()) {
    json all;
    all["result"] = r.result;
    all["meter"] = r.meter;
    if (!r.separators.is_null()) all["separators"] = r.separators;
    std::cout << all.dump(2) << "\n";
    return kOk;
  }
  std::vector<Artifact> files;
  if (cfg.format == "csv") {
    files.push_back({".csv", r.csv});
  } else {
    files.push_back({".json", r.result.dump(2) + "\n"});
  }
  files.push_back({".meter.json", r.meter.dump(2) + "\n"});
  if (!r.edge_list.empty()) files.push_back({".edges.txt", r.edge_list});
  if (!r.separators.is_null()) files.push_back({".separators.json", r.separators.dump(2) + "\n"});
  write_all(cfg.out, files);
  return kOk;
}

int do_bench(const std::string& suite, const std::vector<int>& ids, const std::string& out, bool json_stdout) {
  if (suite.empty()) throw UsageError("bench needs a suite id (available: acceptance)");
  if (suite != "acceptance") throw UsageError("unknown suite '" + suite + "' (available: acceptance)");
  std::vector<semistream::bench::CriterionResult> rows;
  for (int id : ids) {
    const auto& all = semistream::bench::criteria();
    if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.id == id; })) {
      throw UsageError("no criterion " + std::to_string(id));
    }
  }
  for (const auto& c : semistream::bench::criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    rows.push_back(semistream::bench::run_criterion(c));
    if (!json_stdout) std::cout << semistream::bench::format_line(rows.back()) << std::endl;
  }
  const json report = semistream::bench::to_json(rows);
  if (json_stdout) std::cout << report.dump(2) << "\n";
  if (!out.empty()) write_all(out, {{"", report.dump(2) + "\n"}});
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-streaming graph algorithms on metered edge streams"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* run = app.add_subcommand("run", "Run one algorithm on a stream file or a generated graph");
  run->add_option("--alg", cfg.alg, "Algorithm id")->required()->check(CLI::IsMember(kAlgorithms));
  auto* src_file = run->add_option("--stream", cfg.stream_path, "Stream file ('n N model ins|turn' then '+ u v' lines)");
  auto* src_gen = run->add_option("--gen", cfg.gen_spec, "Generator spec, e.g. gnp:500,0.02 or path:10");
  src_file->excludes(src_gen);
  run->add_option("--model", cfg.model, "Stream model for --gen")->check(CLI::IsMember({"ins", "turn"}));
  run->add_option("--seed", cfg.seed, "Run seed; every subroutine derives its own");
  run->add_option("--k", cfg.k, "Centre budget (BFS), layer depth (dfs-simple) or path budget (dfs-aa)");
  run->add_option("--s", cfg.s, "Connectivity parameter (cert, dfs-aa)");
  run->add_option("--p", cfg.p, "Pass parameter for bfs-det");
  run->add_option("--epsilon", cfg.epsilon, "Sparsifier loss (mlst, sparsifier, max-cut)")->check(CLI::PositiveNumber);
  run->add_option("--confidence", cfg.confidence, "Confidence constant C for the sampled-centre BFS")
      ->check(CLI::PositiveNumber);
  run->add_option("--terminals", cfg.terminals, "Steiner terminals, comma separated");
  run->add_option("--root", cfg.root, "Source or root node");
  run->add_flag("--strict-budget", cfg.strict, "Fail when the calibrated space budget is exceeded");
  run->add_option("--budget-words", cfg.budget_words, "Replace the calibrated budget (words)");
  run->add_option("--attempts", cfg.attempts, "Runs allowed after retryable failures")->check(CLI::Range(1u, 100u));
  run->add_option("--out", cfg.out, "Output prefix; writes PREFIX.json (or .csv) and PREFIX.meter.json");
  run->add_option("--format", cfg.format, "Result format with --out")->check(CLI::IsMember({"json", "csv"}));
  run->add_flag("--dump-separators", cfg.dump_separators, "dfs-aa: also emit every separator as built");

  std::string suite;
  std::vector<int> criteria_ids;
  std::string bench_out;
  bool bench_json = false;
  auto* bench = app.add_subcommand("bench", "Run the acceptance criteria table");
  bench->add_option("suite", suite, "Suite id (acceptance)")->required();
  bench->add_option("--criterion", criteria_ids, "Only these criterion ids");
  bench->add_option("--out", bench_out, "Write the JSON report here");
  bench->add_flag("--json", bench_json, "Print the JSON report instead of one line per criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) {
      if (cfg.stream_path.empty() && cfg.gen_spec.empty()) throw UsageError("run needs --stream or --gen");
      return do_run(cfg);
    }
    return do_bench(suite, criteria_ids, bench_out, bench_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const semistream::MalformedStream& e) {
    std::cerr << "malformed stream: " << e.what() << "\n";
    return kMalformed;
  } catch (const semistream::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const semistream::RetryableFailure& e) {
    std::cerr << "gave up after " << cfg.attempts << " attempt(s): " << e.what() << "\n";
    return kRetriesExhausted;
  } catch (const semistream::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
