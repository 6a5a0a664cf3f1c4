#include "tmod/dp_engine.hpp"
#include "tmod/genbench.hpp"
#include "tmod/io.hpp"
#include "tmod/oracle.hpp"
#include "tmod/partition_score.hpp"
#include "tmod/treedec.hpp"
#include "tmod/window_approx.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tmod;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

struct Common {
  std::string graph;
  std::string omega = "1";
  std::string format = "json";
  TemporalGraph load_graph() const { return parse_tg(read_file(graph)); }
  OutputFormat output_format() const { return format == "tsv" ? OutputFormat::Tsv : OutputFormat::Json; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--graph", c.graph, "temporal graph file (.tg)")->required();
  cmd->add_option("--omega", c.omega, "loyalty weight, NUM or NUM/DEN");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
}

NiceTreeDecomposition nice_for(const TemporalGraph& g, const std::string& td_path) {
  const StaticGraph under = g.underlying();
  TreeDecomposition td = td_path.empty() ? heuristic_tree_decomposition(under) : load_td(read_file(td_path), under);
  return make_nice(td, under, balanced_root(td));
}

nlohmann::ordered_json nice_json(const NiceTreeDecomposition& ntd) {
  static const char* kinds[] = {"leaf", "introduce", "forget", "join"};
  nlohmann::ordered_json j;
  j["width"] = ntd.width();
  j["root"] = ntd.root();
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& node = ntd.nodes[i];
    nlohmann::ordered_json n;
    n["id"] = i;
    n["kind"] = kinds[static_cast<int>(node.kind)];
    if (node.kind == NiceKind::Introduce || node.kind == NiceKind::Forget) n["vertex"] = node.vertex;
    n["bag"] = node.bag;
    n["children"] = node.children;
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Score parse_p(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return make_score(v.get<long>());
  throw InputError("p_active must be an integer or a \"NUM/DEN\" string");
}

ExperimentGrid parse_grid(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("grid: ") + e.what());
  }
  ExperimentGrid grid;
  try {
    for (const auto& inst : j.at("instances")) {
      GenSpec spec;
      spec.n = inst.at("n").get<int>();
      spec.k = inst.value("k", 1);
      spec.lifetime = inst.value("T", 1);
      if (inst.contains("p")) spec.p_active = parse_p(inst["p"]);
      spec.seed = inst.value("seed", std::uint64_t{0});
      grid.instances.push_back(spec);
    }
    grid.parts = j.at("parts").get<std::vector<int>>();
    grid.windows = j.at("windows").get<std::vector<int>>();
    for (const auto& w : j.at("omegas")) {
      grid.omegas.push_back(w.is_string() ? Omega::parse(w.get<std::string>()) : Omega(make_score(w.get<long>())));
    }
    grid.budget = j.value("budget", kDefaultBudget);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("grid: ") + e.what());
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and approximate temporal modularity"};
  app.require_subcommand(1);

  Common common;

  std::string partition_path;
  auto* score = app.add_subcommand("score", "score a temporal partition");
  add_common(score, common);
  score->add_option("--partition", partition_path, "partition file")->required();

  int parts = 2;
  int window = 2;
  std::string td_path;
  std::string emit_path;
  bool canonicalize = false;
  std::uint64_t budget = kDefaultBudget;

  auto* exact = app.add_subcommand("exact", "exact temporal c-modularity via tree decomposition DP");
  add_common(exact, common);
  exact->add_option("--parts", parts, "maximum number of parts c")->check(CLI::Range(1, 255));
  exact->add_option("--td", td_path, "tree decomposition file; computed heuristically if absent");
  exact->add_option("--emit-partition", emit_path, "write an optimal partition to this path");
  exact->add_flag("--canonicalize", canonicalize, "merge label-permuted states");

  auto* approx = app.add_subcommand("approx", "windowed approximation");
  add_common(approx, common);
  approx->add_option("--parts", parts, "maximum number of parts c")->check(CLI::Range(1, 255));
  approx->add_option("--window", window, "maximum window length d")->check(CLI::PositiveNumber);
  approx->add_option("--td", td_path, "tree decomposition file; computed heuristically if absent");
  approx->add_flag("--canonicalize", canonicalize, "merge label-permuted states");

  auto* brute = app.add_subcommand("brute", "exhaustive enumeration");
  add_common(brute, common);
  bool brute_parts_given = false;
  brute->add_option("--parts", parts, "maximum number of parts c; defaults to n*T")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { brute_parts_given = true; });
  brute->add_option("--budget", budget, "maximum number of partitions to enumerate");
  brute->add_option("--emit-partition", emit_path, "write an optimal partition to this path");

  auto* td = app.add_subcommand("td", "tree decomposition utilities");
  td->require_subcommand(1);
  std::string graph_path;
  std::string out_path;
  auto* td_compute = td->add_subcommand("compute", "heuristic decomposition of the underlying graph");
  td_compute->add_option("--graph", graph_path)->required();
  td_compute->add_option("--out", out_path, "output path, stdout if absent");
  auto* td_validate = td->add_subcommand("validate", "check a decomposition against a graph");
  td_validate->add_option("--graph", graph_path)->required();
  td_validate->add_option("--td", td_path)->required();
  auto* td_nicify = td->add_subcommand("nicify", "convert to a nice decomposition (JSON)");
  td_nicify->add_option("--graph", graph_path)->required();
  td_nicify->add_option("--td", td_path, "input decomposition; computed heuristically if absent");
  td_nicify->add_option("--out", out_path, "output path, stdout if absent");

  auto* gen = app.add_subcommand("gen", "instance generation and experiments");
  gen->require_subcommand(1);
  GenSpec spec;
  std::string p_text = "1";
  std::string out_graph;
  std::string out_td;
  auto* gen_instance = gen->add_subcommand("instance", "random partial k-tree temporal graph");
  gen_instance->add_option("--n", spec.n)->required();
  gen_instance->add_option("--k", spec.k);
  gen_instance->add_option("--T", spec.lifetime);
  gen_instance->add_option("--p", p_text, "activation probability, NUM or NUM/DEN");
  gen_instance->add_option("--seed", spec.seed);
  gen_instance->add_option("--out-graph", out_graph, "graph output path, stdout if absent");
  gen_instance->add_option("--out-td", out_td, "write the witness decomposition here");
  std::string grid_path;
  auto* gen_experiment = gen->add_subcommand("experiment", "run a JSON-described experiment grid");
  gen_experiment->add_option("--grid", grid_path)->required();
  gen_experiment->add_option("--out", out_path, "CSV output path, stdout if absent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*score) {
      const TemporalGraph g = common.load_graph();
      const Omega omega = Omega::parse(common.omega);
      const TemporalPartition p = parse_partition(read_file(partition_path), g.vertex_count(), g.lifetime());
      auto rec = ResultRecord::from_raw(temporal_modularity_raw(g, p, omega), normalizer(g, omega));
      std::cout << emit_result(rec, common.output_format());
    } else if (*exact) {
      const TemporalGraph g = common.load_graph();
      const Omega omega = Omega::parse(common.omega);
      DpOptions opts;
      opts.emit_witness = !emit_path.empty();
      opts.canonicalize = canonicalize;
      const ExactResult r = exact_c_modularity(g, omega, parts, nice_for(g, td_path), opts);
      auto rec = ResultRecord::from_raw(r.raw, normalizer(g, omega));
      if (r.witness) {
        write_file(emit_path, write_partition(*r.witness));
        rec.witness_path = emit_path;
      }
      std::cout << emit_result(rec, common.output_format());
    } else if (*approx) {
      const TemporalGraph g = common.load_graph();
      const Omega omega = Omega::parse(common.omega);
      DpOptions opts;
      opts.canonicalize = canonicalize;
      const ApproxResult r = windowed_optimum(g, omega, parts, window, nice_for(g, td_path), opts);
      std::cout << emit_result(ResultRecord::from(r), common.output_format());
    } else if (*brute) {
      const TemporalGraph g = common.load_graph();
      const Omega omega = Omega::parse(common.omega);
      const OracleResult r = brute_parts_given ? brute_force_c_modularity(g, omega, parts, budget)
                                               : brute_force_modularity(g, omega, budget);
      auto rec = ResultRecord::from(r);
      if (!emit_path.empty()) {
        write_file(emit_path, write_partition(r.witness));
        rec.witness_path = emit_path;
      }
      std::cout << emit_result(rec, common.output_format());
    } else if (*td_compute) {
      const TemporalGraph g = parse_tg(read_file(graph_path));
      write_output(out_path, write_td(heuristic_tree_decomposition(g.underlying()), g.vertex_count()));
    } else if (*td_validate) {
      const TemporalGraph g = parse_tg(read_file(graph_path));
      const TreeDecomposition d = parse_td(read_file(td_path));
      const ValidationReport report = validate(d, g.underlying());
      if (!report) {
        std::cerr << "invalid: " << report.message << '\n';
        return 2;
      }
      std::cout << "valid width " << d.width() << '\n';
    } else if (*td_nicify) {
      const TemporalGraph g = parse_tg(read_file(graph_path));
      write_output(out_path, nice_json(nice_for(g, td_path)).dump(2) + "\n");
    } else if (*gen_instance) {
      spec.p_active = parse_rational(p_text);
      const GeneratedInstance inst = gen_partial_ktree_temporal(spec);
      write_output(out_graph, write_tg(inst.graph));
      if (!out_td.empty()) write_file(out_td, write_td(inst.witness, inst.graph.vertex_count()));
    } else if (*gen_experiment) {
      const ExperimentGrid grid = parse_grid(read_file(grid_path));
      const auto rows = run_experiment(grid);
      std::ostringstream csv;
      write_experiment_csv(csv, rows);
      write_output(out_path, csv.str());
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
