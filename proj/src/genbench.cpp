#include "tmod/genbench.hpp"

#include "tmod/dp_engine.hpp"
#include "tmod/window_approx.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>

namespace tmod {

GeneratedInstance gen_partial_ktree_temporal(const GenSpec& spec) {
  if (spec.n < 1) throw InputError("generator needs at least one vertex");
  if (spec.k < 0 || spec.k >= spec.n) throw InputError("generator needs 0 <= k < n");
  if (spec.lifetime < 1) throw InputError("generator needs lifetime >= 1");
  if (sgn(spec.p_active) < 0 || spec.p_active > 1) throw InputError("p_active must lie in [0, 1]");
  if (!spec.p_active.get_den().fits_ulong_p()) throw InputError("p_active denominator too large");

  std::mt19937_64 rng(spec.seed);
  const int k = spec.k;

  GeneratedInstance out;
  std::set<Edge> edges;
  std::vector<Vertex> seed_clique;
  for (Vertex v = 0; v <= k; ++v) seed_clique.push_back(v);
  for (Vertex a = 0; a <= k; ++a) {
    for (Vertex b = a + 1; b <= k; ++b) edges.insert({a, b});
  }
  out.witness.bags.push_back(seed_clique);

  // k-cliques with the id of a bag that contains them.
  std::vector<std::pair<std::vector<Vertex>, int>> cliques;
  if (k == 0) {
    cliques.push_back({{}, 0});
  } else {
    for (Vertex skip = 0; skip <= k; ++skip) {
      std::vector<Vertex> q;
      for (Vertex v = 0; v <= k; ++v) {
        if (v != skip) q.push_back(v);
      }
      cliques.push_back({q, 0});
    }
  }

  for (Vertex v = k + 1; v < spec.n; ++v) {
    const auto [q, owner] = cliques[rng() % cliques.size()];
    for (Vertex u : q) edges.insert({u, v});
    std::vector<Vertex> bag = q;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    const int id = static_cast<int>(out.witness.bags.size());
    out.witness.bags.push_back(bag);
    out.witness.tree_edges.emplace_back(owner, id);
    for (std::size_t drop = 0; drop < q.size(); ++drop) {
      std::vector<Vertex> nq;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (i != drop) nq.push_back(q[i]);
      }
      nq.push_back(v);
      cliques.push_back({nq, id});
    }
  }

  const unsigned long num = spec.p_active.get_num().get_ui();
  const unsigned long den = spec.p_active.get_den().get_ui();
  std::vector<TimeEdge> time_edges;
  for (const Edge& e : edges) {
    for (Time t = 1; t <= spec.lifetime; ++t) {
      if (rng() % den < num) time_edges.push_back({e.u, e.v, t});
    }
  }
  out.graph = TemporalGraph::build(spec.n, spec.lifetime, time_edges);
  return out;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string ratio_text(const std::optional<Score>& s) {
  if (!s) return "";
  return to_decimal(*s, 12);
}

std::string opt_text(const std::optional<Score>& s) { return s ? to_string(*s) : ""; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentGrid& grid) {
  std::vector<ExperimentRow> rows;
  for (std::size_t id = 0; id < grid.instances.size(); ++id) {
    const GenSpec& spec = grid.instances[id];
    std::optional<GeneratedInstance> inst;
    std::string gen_error;
    try {
      inst = gen_partial_ktree_temporal(spec);
    } catch (const std::exception& e) {
      gen_error = e.what();
    }
    std::optional<NiceTreeDecomposition> ntd;
    if (inst) ntd = make_nice(inst->witness, inst->graph.underlying());

    // Oracle and exact values do not depend on every grid axis; cache them.
    std::map<std::string, std::pair<std::optional<Score>, double>> oracle_cache;
    std::map<std::pair<int, std::string>, std::pair<std::optional<Score>, double>> exact_cache;

    for (int c : grid.parts) {
      for (int d : grid.windows) {
        for (const Omega& omega : grid.omegas) {
          ExperimentRow row;
          row.instance_id = id;
          row.n = spec.n;
          row.lifetime = spec.lifetime;
          row.parts = c;
          row.window = d;
          row.omega = omega.value();
          if (!inst) {
            row.error = gen_error;
            rows.push_back(std::move(row));
            continue;
          }
          row.width = inst->witness.width();
          const std::string okey = to_string(omega.value());
          try {
            auto it = oracle_cache.find(okey);
            if (it == oracle_cache.end()) {
              auto start = std::chrono::steady_clock::now();
              std::optional<Score> value;
              try {
                value = brute_force_modularity(inst->graph, omega, grid.budget).best_raw;
              } catch (const BudgetExceeded&) {
              }
              it = oracle_cache.emplace(okey, std::make_pair(value, elapsed_ms(start))).first;
            }
            row.oracle_raw = it->second.first;
            row.t_oracle_ms = it->second.second;

            auto ekey = std::make_pair(c, okey);
            auto jt = exact_cache.find(ekey);
            if (jt == exact_cache.end()) {
              auto start = std::chrono::steady_clock::now();
              Score value = exact_c_modularity(inst->graph, omega, c, *ntd).raw;
              jt = exact_cache.emplace(ekey, std::make_pair(std::optional<Score>(value), elapsed_ms(start))).first;
            }
            row.exact_raw = jt->second.first;
            row.t_exact_ms = jt->second.second;

            auto start = std::chrono::steady_clock::now();
            row.approx_raw = windowed_optimum(inst->graph, omega, c, d, *ntd).raw;
            row.t_approx_ms = elapsed_ms(start);

            if (row.oracle_raw && sgn(*row.oracle_raw) > 0) {
              Score ratio = *row.approx_raw / *row.oracle_raw;
              ratio.canonicalize();
              row.ratio = ratio;
            }
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kExperimentHeader << '\n';
  char buf[64];
  auto ms = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.n << ',' << r.lifetime << ',' << r.width << ',' << r.parts << ',' << r.window
        << ',' << to_string(r.omega) << ',' << opt_text(r.oracle_raw) << ',' << opt_text(r.exact_raw) << ','
        << opt_text(r.approx_raw) << ',' << ratio_text(r.ratio) << ',' << ms(r.t_oracle_ms) << ','
        << ms(r.t_exact_ms) << ',' << ms(r.t_approx_ms) << ',' << csv_escape(r.error) << '\n';
  }
}

}  // namespace tmod
