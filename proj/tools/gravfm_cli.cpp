// gravfm: graph generation, partitioning, simulation and throughput modelling.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gravfm/engine.hpp"
#include "gravfm/error.hpp"
#include "gravfm/graph.hpp"
#include "gravfm/oracle.hpp"
#include "gravfm/params.hpp"
#include "gravfm/partition.hpp"
#include "gravfm/perf_model.hpp"
#include "gravfm/report.hpp"

using namespace gravfm;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

// Writes to the file if a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::size_t vertices = 1024, edges = 8192;
  unsigned scale = 10;
  std::size_t edgefactor = 16;
  std::vector<double> probs{kDefaultRmatProbs.begin(), kDefaultRmatProbs.end()};
  std::size_t width = 1, depth = 1, degree = 1;
  std::uint64_t seed = 1;
  std::string out;
  bool stats = false;
};

void emit_graph(const Graph& g, const GenerateOptions& o) {
  Output out(o.out);
  save_edge_list(g, out.stream());
  if (o.stats) std::cerr << to_json(degree_stats(g)) << '\n';
}

void add_generate(CLI::App& app, GenerateOptions& o) {
  auto* gen = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
  gen->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Generator seed");
    c->add_option("-o,--out", o.out, "Output file (default stdout)");
    c->add_flag("--stats", o.stats, "Print degree statistics as JSON on stderr");
  };
  auto* uni = gen->add_subcommand("uniform", "Uniformly random endpoints");
  uni->add_option("--vertices", o.vertices)->required();
  uni->add_option("--edges", o.edges)->required();
  common(uni);
  uni->callback([&] { emit_graph(generate_uniform(o.vertices, o.edges, o.seed), o); });

  auto* rmat = gen->add_subcommand("rmat", "Recursive-matrix power-law graph");
  rmat->add_option("--scale", o.scale)->required();
  rmat->add_option("--edgefactor", o.edgefactor);
  rmat->add_option("--probs", o.probs, "Quadrant probabilities a b c d")->expected(4);
  common(rmat);
  rmat->callback([&] {
    RmatProbs p{o.probs[0], o.probs[1], o.probs[2], o.probs[3]};
    emit_graph(generate_rmat(o.scale, o.edgefactor, o.seed, p), o);
  });

  auto* lay = gen->add_subcommand("layered", "Layered latency graph (width 1: line graph)");
  lay->add_option("--width", o.width)->required();
  lay->add_option("--depth", o.depth)->required();
  lay->add_option("--degree", o.degree, "Target average degree (1: tree edges only)");
  common(lay);
  lay->callback([&] { emit_graph(generate_layered(o.width, o.depth, o.degree, o.seed), o); });
}

// ---------------------------------------------------------------- placement

struct PlacementOptions {
  std::string strategy = "greedy";
  std::size_t fpgas = 1, pes = 1;
  std::string fpga_file;       // FPGA id per vertex, PE level by greedy
  std::string placement_file;  // global PE id per vertex
};

PlacementMap make_placement(const Graph& g, const PlacementOptions& o) {
  if (!o.placement_file.empty()) {
    std::ifstream in(o.placement_file);
    if (!in) throw Error("cannot open " + o.placement_file);
    auto ids = load_partition_file(in);
    return PlacementMap(o.fpgas, o.pes, std::vector<PeId>(ids.begin(), ids.end()));
  }
  if (!o.fpga_file.empty() || o.strategy == "import") {
    if (o.fpga_file.empty()) throw InvalidArgument("import needs --file");
    const auto ids = load_partition_file(o.fpga_file);
    return import_partition(g, ids, o.fpgas, o.pes);
  }
  if (o.strategy == "greedy") return partition_greedy_edges(g, o.fpgas, o.pes);
  if (o.strategy == "round-robin") return partition_round_robin(g, o.fpgas, o.pes);
  throw InvalidArgument("unknown partition strategy '" + o.strategy + "'");
}

struct PartitionOptions {
  PlacementOptions placement;
  std::string graph, out;
};

void add_partition(CLI::App& app, PartitionOptions& o) {
  auto* part = app.add_subcommand("partition", "Assign vertices to PEs and report edge imbalance");
  part->add_option("strategy", o.placement.strategy, "greedy | round-robin | import")
      ->required()
      ->check(CLI::IsMember({"greedy", "round-robin", "import"}));
  part->add_option("graph", o.graph, "Edge list")->required();
  part->add_option("--fpgas", o.placement.fpgas);
  part->add_option("--pes", o.placement.pes, "PEs per FPGA");
  part->add_option("--file", o.placement.fpga_file, "FPGA id per vertex (import)");
  part->add_option("-o,--out", o.out, "Write the PE id of every vertex here");
  part->callback([&] {
    const Graph g = load_edge_list_file(o.graph);
    if (o.placement.strategy == "import" && o.placement.fpgas == 1) {
      // Infer the FPGA count from the partition file.
      const auto ids = load_partition_file(o.placement.fpga_file);
      FpgaId top = 0;
      for (FpgaId f : ids) top = std::max(top, f);
      o.placement.fpgas = static_cast<std::size_t>(top) + 1;
    }
    const PlacementMap pm = make_placement(g, o.placement);
    if (!o.out.empty()) {
      Output out(o.out);
      save_assignment(pm.assignment(), out.stream());
    }
    nlohmann::ordered_json j;
    j["n_fpga"] = pm.n_fpga();
    j["n_pe_per_fpga"] = pm.pes_per_fpga();
    j["pe_imbalance"] = imbalance(g, pm, BalanceLevel::pe);
    j["fpga_imbalance"] = imbalance(g, pm, BalanceLevel::fpga);
    j["pe_edge_loads"] = edge_loads(g, pm, BalanceLevel::pe);
    std::cout << j.dump(2) << '\n';
  });
}

// ---------------------------------------------------------------- run

struct RunOptions {
  std::string graph, kernel = "wcc", mode = "broadcast", config, out, trace;
  PlacementOptions placement;
  bool verify = false, no_symmetrize = false, no_filter = false;
  std::uint64_t seed = 0;
  Cycle jitter = 0;
  VertexId root = 0;
  double damping = 0.85;
  Superstep pr_supersteps = 30;
  unsigned id_bits = 32;
};

struct Verdict {
  bool ok = true;
  std::string detail;
};

Verdict check(const Graph& g, const WccKernel&, const std::vector<WccKernel::State>& s) {
  const auto expect = oracle::wcc_min_labels(g);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (s[v].label != expect[v]) {
      return {false, "vertex " + std::to_string(v) + " label " + std::to_string(s[v].label) + ", expected " +
                         std::to_string(expect[v])};
    }
  }
  return {};
}

Verdict check(const Graph& g, const BfsKernel& k, const std::vector<BfsKernel::State>& s) {
  const auto ref = oracle::bfs(g, k.root());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const bool reached = ref.level[v] >= 0;
    if (s[v].visited != reached || (reached && s[v].parent != ref.parent[v])) {
      return {false, "vertex " + std::to_string(v) + " parent " + std::to_string(s[v].parent) + ", expected " +
                         std::to_string(ref.parent[v])};
    }
  }
  return {};
}

Verdict check(const Graph& g, const PageRankKernel& k, const std::vector<PageRankKernel::State>& s) {
  const auto ref = oracle::pagerank(g, k.damping(), static_cast<unsigned>(k.supersteps()));
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (std::abs(s[v].rank - ref[v]) > 1e-9 * std::abs(ref[v])) {
      return {false, "vertex " + std::to_string(v) + " rank off by " + std::to_string(s[v].rank - ref[v])};
    }
  }
  return {};
}

template <class K>
int run_with(const Graph& g, const PlacementMap& pm, const K& kernel, const SimConfig& cfg, const RunOptions& o) {
  const auto result = simulate(g, pm, kernel, cfg);
  {
    Output out(o.out);
    out.stream() << to_json(result.report) << '\n';
  }
  if (!o.trace.empty()) {
    Output trace(o.trace);
    write_superstep_csv(trace.stream(), result.report);
  }
  if (!o.verify) return 0;
  const Verdict v = check(g, kernel, result.states);
  std::cerr << "verify " << o.kernel << ": " << (v.ok ? "ok" : "FAILED " + v.detail) << '\n';
  return v.ok ? 0 : kExitVerifyFailed;
}

SimConfig sim_config(const RunOptions& o, const CLI::App& cmd) {
  SimConfig cfg;
  if (!o.config.empty()) apply_sim_config(KeyValues::parse_file(o.config), cfg);
  // Flags given on the command line win over the config file.
  if (cmd.count("--fpgas") || o.config.empty()) cfg.n_fpga = o.placement.fpgas;
  if (cmd.count("--pes") || o.config.empty()) cfg.n_pe_per_fpga = o.placement.pes;
  if (cmd.count("--mode") || o.config.empty()) cfg.delivery_mode = parse_delivery_mode(o.mode);
  if (cmd.count("--seed")) cfg.rng_seed = o.seed;
  if (cmd.count("--jitter")) cfg.network_jitter_cycles = o.jitter;
  if (cmd.count("--id-bits")) cfg.vertex_id_bits = o.id_bits;
  if (o.no_filter) cfg.filter_enabled = false;
  cfg.validate();
  return cfg;
}

int do_run(RunOptions o, const CLI::App& cmd) {
  Graph g = load_edge_list_file(o.graph, LoadOptions{o.id_bits});
  if (o.kernel == "wcc" && !o.no_symmetrize) g = symmetrize(g);
  const SimConfig cfg = sim_config(o, cmd);
  o.placement.fpgas = cfg.n_fpga;
  o.placement.pes = cfg.n_pe_per_fpga;
  const PlacementMap pm = make_placement(g, o.placement);
  if (o.kernel == "wcc") return run_with(g, pm, WccKernel{cfg.vertex_id_bits}, cfg, o);
  if (o.kernel == "bfs") {
    if (o.root >= g.num_vertices()) throw InvalidArgument("BFS root out of range");
    return run_with(g, pm, BfsKernel{o.root, cfg.vertex_id_bits}, cfg, o);
  }
  if (o.kernel == "pr") return run_with(g, pm, PageRankKernel{o.damping, o.pr_supersteps, cfg.vertex_id_bits}, cfg, o);
  throw InvalidArgument("unknown kernel '" + o.kernel + "'");
}

void add_placement_flags(CLI::App* c, PlacementOptions& p) {
  c->add_option("--fpgas", p.fpgas, "Number of FPGAs");
  c->add_option("--pes", p.pes, "PEs per FPGA");
  c->add_option("--partition", p.strategy, "greedy | round-robin")
      ->check(CLI::IsMember({"greedy", "round-robin"}));
  c->add_option("--fpga-partition", p.fpga_file, "FPGA id per vertex; PE level chosen greedily");
  c->add_option("--placement", p.placement_file, "Global PE id per vertex");
}

void add_run(CLI::App& app, RunOptions& o, int& exit_code) {
  auto* run = app.add_subcommand("run", "Simulate a kernel and print the run report as JSON");
  run->add_option("graph", o.graph, "Edge list")->required();
  run->add_option("--kernel", o.kernel)->check(CLI::IsMember({"wcc", "bfs", "pr"}));
  run->add_option("--mode", o.mode, "broadcast | unicast")->check(CLI::IsMember({"broadcast", "unicast"}));
  add_placement_flags(run, o.placement);
  run->add_option("--config", o.config, "Simulator parameters, key = value");
  run->add_option("--seed", o.seed, "Scheduler and jitter seed");
  run->add_option("--jitter", o.jitter, "Max extra cycles per network hop");
  run->add_option("--id-bits", o.id_bits, "Vertex id width");
  run->add_option("--root", o.root, "BFS root");
  run->add_option("--damping", o.damping, "PageRank damping");
  run->add_option("--supersteps", o.pr_supersteps, "PageRank supersteps");
  run->add_flag("--no-filter", o.no_filter, "Send updates to every FPGA");
  run->add_flag("--no-symmetrize", o.no_symmetrize, "Run WCC on the graph as given");
  run->add_flag("--verify", o.verify, "Check the result against a sequential reference");
  run->add_option("-o,--out", o.out, "Report file (default stdout)");
  run->add_option("--trace", o.trace, "Per-superstep CSV");
  run->callback([&, run] { exit_code = do_run(o, *run); });
}

// ---------------------------------------------------------------- model

struct ModelOptions {
  std::string platform, kernel = "wcc", graph;
  std::vector<std::string> sets;
  std::optional<double> vertices, edges;
  std::size_t fpgas = 4;
  std::optional<std::size_t> pes;
  std::size_t min_fpgas = 1, max_fpgas = 64;
  unsigned id_bits = 32;
  bool weighted = false, granularity = false, table = false, unicast = false;
};

struct ModelInputs {
  PlatformParams platform;
  AlgorithmParams algorithm;
  DatasetParams dataset;
};

ModelInputs model_inputs(const ModelOptions& o) {
  ModelInputs in;
  KeyValues kv;
  if (!o.platform.empty()) kv = KeyValues::parse_file(o.platform);
  std::map<std::string, std::string> overrides;
  for (const std::string& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + s + "'");
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  auto take = [&](const char* key, double& field, Quantity q) {
    if (auto it = overrides.find(key); it != overrides.end()) {
      field = parse_quantity(it->second, q);
      overrides.erase(it);
    }
  };
  if (o.platform.empty()) {
    in.platform = reference_platform();
  } else {
    in.platform = platform_from(kv);
  }
  take("f_clk", in.platform.f_clk, Quantity::frequency);
  take("cpe", in.platform.cpe, Quantity::plain);
  take("bw_if", in.platform.bw_if, Quantity::bandwidth);
  take("bw_network", in.platform.bw_network, Quantity::bandwidth);
  take("bw_mem", in.platform.bw_mem, Quantity::bandwidth);
  take("m_board", in.platform.m_board, Quantity::size);
  take("m_memword", in.platform.m_memword, Quantity::size);
  double pe_max = static_cast<double>(in.platform.n_pe_max), pe_min = static_cast<double>(in.platform.n_pe_min);
  take("n_pe_max", pe_max, Quantity::plain);
  take("n_pe_min", pe_min, Quantity::plain);
  in.platform.n_pe_max = static_cast<std::size_t>(pe_max);
  in.platform.n_pe_min = static_cast<std::size_t>(pe_min);

  in.algorithm = AlgorithmParams::from_kernel(builtin_kernel(o.kernel, o.id_bits, o.weighted));
  take("m_vertex", in.algorithm.m_vertex, Quantity::size);
  take("m_update", in.algorithm.m_update, Quantity::size);
  take("m_message", in.algorithm.m_message, Quantity::size);
  take("m_edge", in.algorithm.m_edge, Quantity::size);

  if (!o.graph.empty()) {
    const Graph g = load_edge_list_file(o.graph);
    in.dataset = {static_cast<double>(g.num_vertices()), static_cast<double>(g.num_edges())};
  }
  if (o.vertices) in.dataset.num_vertices = *o.vertices;
  if (o.edges) in.dataset.num_edges = *o.edges;
  take("num_vertices", in.dataset.num_vertices, Quantity::plain);
  take("num_edges", in.dataset.num_edges, Quantity::plain);
  if (!overrides.empty()) throw InvalidArgument("unknown --set key '" + overrides.begin()->first + "'");

  in.platform.validate();
  in.algorithm.validate();
  in.dataset.validate();
  return in;
}

void add_model_flags(CLI::App* c, ModelOptions& o) {
  c->add_option("--platform", o.platform, "Platform file, key = value (default: reference platform)");
  c->add_option("--set", o.sets, "Override a platform, algorithm or dataset value: key=value");
  c->add_option("--kernel", o.kernel)->check(CLI::IsMember({"wcc", "bfs", "pr"}));
  c->add_option("--id-bits", o.id_bits);
  c->add_flag("--weighted", o.weighted, "Edges carry 32-bit weights");
  c->add_option("--graph", o.graph, "Take |V| and |E| from an edge list");
  c->add_option("--vertices", o.vertices);
  c->add_option("--edges", o.edges);
  c->add_flag("--granularity", o.granularity, "Account for partially used memory words");
  c->add_flag("--table", o.table, "Plain-text table instead of JSON");
}

void print_breakdown(const ModelInputs& in, const ModelOptions& o, const LimitBreakdown& b) {
  if (o.table) {
    write_limits_table(std::cout, b);
  } else {
    std::cout << to_json(b) << '\n';
  }
  if (o.unicast && b.n_fpga >= 2) {
    const auto u = baseline_limits_unicast(in.platform, in.algorithm, b.n_fpga);
    nlohmann::ordered_json j;
    j["unicast_l_if"] = u.l_if;
    j["unicast_l_net"] = u.l_net;
    j["speedup_vs_unicast"] = speedup_vs_unicast(in.algorithm, in.dataset, b.n_fpga);
    std::cout << j.dump(2) << '\n';
  }
}

void add_model(CLI::App& app, ModelOptions& o) {
  auto* model = app.add_subcommand("model", "Evaluate the throughput limits");
  add_model_flags(model, o);
  model->add_option("--fpgas", o.fpgas);
  model->add_option("--pes", o.pes, "PEs per FPGA (default n_pe_max)");
  model->add_flag("--unicast", o.unicast, "Also print the unicast-design limits and the speedup");
  model->require_subcommand(0, 1);

  auto* opt = model->add_subcommand("optimize", "Pick the FPGA and PE counts");
  add_model_flags(opt, o);
  opt->add_option("--min-fpgas", o.min_fpgas);
  opt->add_option("--max-fpgas", o.max_fpgas);
  opt->callback([&] {
    const ModelInputs in = model_inputs(o);
    const SystemChoice c = optimize_system(in.platform, in.algorithm, in.dataset, o.min_fpgas, o.max_fpgas,
                                           o.granularity);
    if (o.table) {
      write_limits_table(std::cout, c.breakdown);
    } else {
      std::cout << to_json(c) << '\n';
    }
  });

  model->callback([&, model, opt] {
    if (opt->parsed()) return;
    const ModelInputs in = model_inputs(o);
    const std::size_t pes = o.pes.value_or(in.platform.n_pe_max);
    const LimitBreakdown b = predict(in.platform, in.algorithm, in.dataset, o.fpgas, pes, o.granularity);
    print_breakdown(in, o, b);
    if (min_fpgas(in.platform, in.algorithm, in.dataset) > o.fpgas) {
      std::cerr << "warning: dataset needs at least " << min_fpgas(in.platform, in.algorithm, in.dataset)
                << " FPGAs\n";
    }
  });
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string kernel = "wcc", mode = "broadcast", config, out;
  PlacementOptions placement{"greedy", 4, 9, "", ""};
  std::vector<std::size_t> degrees{2, 4, 8, 16, 32, 64};
  std::vector<std::size_t> widths{16384, 4096, 1024, 256, 64};
  std::size_t vertices = 4096, layer_vertices = 16384, degree = 64;
  std::uint64_t seed = 1;
};

template <class K>
RunReport sweep_point(const Graph& g, const K& kernel, const SweepOptions& o) {
  SimConfig cfg;
  if (!o.config.empty()) apply_sim_config(KeyValues::parse_file(o.config), cfg);
  cfg.n_fpga = o.placement.fpgas;
  cfg.n_pe_per_fpga = o.placement.pes;
  cfg.delivery_mode = parse_delivery_mode(o.mode);
  cfg.validate();
  return simulate(g, make_placement(g, o.placement), kernel, cfg).report;
}

RunReport sweep_run(Graph g, const SweepOptions& o) {
  if (o.kernel == "wcc") return sweep_point(symmetrize(g), WccKernel{}, o);
  if (o.kernel == "bfs") return sweep_point(g, BfsKernel{0}, o);
  return sweep_point(g, PageRankKernel{}, o);
}

void sweep_row(std::ostream& out, const std::string& key, const RunReport& r) {
  out << key << ',' << r.num_vertices << ',' << r.num_edges << ',' << r.supersteps << ',' << r.messages_generated
      << ',' << r.simulated_cycles << ',' << r.teps << ',' << r.inter_fpga_payload_bits << '\n';
}

constexpr const char* kSweepColumns = "num_vertices,num_edges,supersteps,messages,simulated_cycles,teps,"
                                      "inter_fpga_payload_bits";

void add_sweep(CLI::App& app, SweepOptions& o) {
  auto* sweep = app.add_subcommand("sweep", "Simulate a series of graphs and print CSV");
  sweep->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--kernel", o.kernel)->check(CLI::IsMember({"wcc", "bfs", "pr"}));
    c->add_option("--mode", o.mode)->check(CLI::IsMember({"broadcast", "unicast"}));
    c->add_option("--fpgas", o.placement.fpgas);
    c->add_option("--pes", o.placement.pes);
    c->add_option("--partition", o.placement.strategy)->check(CLI::IsMember({"greedy", "round-robin"}));
    c->add_option("--config", o.config, "Simulator parameters, key = value");
    c->add_option("--seed", o.seed, "Graph seed");
    c->add_option("-o,--out", o.out, "CSV file (default stdout)");
  };
  auto* deg = sweep->add_subcommand("degree", "Uniform graphs of fixed |V| and varying average degree");
  common(deg);
  deg->add_option("--degrees", o.degrees)->delimiter(',');
  deg->add_option("--vertices", o.vertices);
  deg->callback([&] {
    Output out(o.out);
    out.stream() << "degree," << kSweepColumns << '\n';
    for (std::size_t d : o.degrees) {
      sweep_row(out.stream(), std::to_string(d), sweep_run(generate_uniform(o.vertices, d * o.vertices, o.seed), o));
    }
  });
  auto* depth = sweep->add_subcommand("depth", "Layered graphs with width * depth held constant");
  common(depth);
  depth->add_option("--widths", o.widths)->delimiter(',');
  depth->add_option("--layer-vertices", o.layer_vertices, "width * depth");
  depth->add_option("--degree", o.degree);
  depth->callback([&] {
    Output out(o.out);
    out.stream() << "width,depth," << kSweepColumns << '\n';
    for (std::size_t w : o.widths) {
      if (w == 0 || o.layer_vertices % w != 0) throw InvalidArgument("width must divide --layer-vertices");
      const std::size_t d = o.layer_vertices / w;
      sweep_row(out.stream(), std::to_string(w) + ',' + std::to_string(d),
                sweep_run(generate_layered(w, d, o.degree, o.seed), o));
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-FPGA vertex-centric graph processing simulator and throughput model"};
  app.require_subcommand(1);
  GenerateOptions gen;
  PartitionOptions part;
  RunOptions run;
  ModelOptions model;
  SweepOptions sweep;
  int exit_code = 0;
  add_generate(app, gen);
  add_partition(app, part);
  add_run(app, run, exit_code);
  add_model(app, model);
  add_sweep(app, sweep);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
