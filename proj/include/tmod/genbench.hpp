#pragma once

#include "tmod/oracle.hpp"
#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"
#include "tmod/treedec.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tmod {

struct GenSpec {
  int n = 0;
  int k = 1;         // target underlying width
  int lifetime = 1;
  Score p_active = 1;  // per (edge, time)
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  TemporalGraph graph;
  TreeDecomposition witness;  // width <= k
};

// Random k-tree (initial (k+1)-clique, each new vertex attached to a uniformly
// chosen existing k-clique), thinned per (edge, time) with probability
// p_active. Never-active edges are dropped, vertices are kept. Deterministic
// in the seed.
GeneratedInstance gen_partial_ktree_temporal(const GenSpec& spec);

struct ExperimentGrid {
  std::vector<GenSpec> instances;
  std::vector<int> parts;
  std::vector<int> windows;
  std::vector<Omega> omegas;
  std::uint64_t budget = kDefaultBudget;
};

struct ExperimentRow {
  std::size_t instance_id = 0;
  int n = 0;
  int lifetime = 0;
  int width = 0;
  int parts = 0;
  int window = 0;
  Score omega;
  std::optional<Score> oracle_raw;
  std::optional<Score> exact_raw;
  std::optional<Score> approx_raw;
  std::optional<Score> ratio;
  double t_oracle_ms = 0;
  double t_exact_ms = 0;
  double t_approx_ms = 0;
  std::string error;
};

inline constexpr const char* kExperimentHeader =
    "instance_id,n,T,width,c,d,omega,oracle_raw,exact_raw,approx_raw,ratio,t_oracle_ms,t_exact_ms,t_approx_ms,error";

// One row per (instance, c, d, omega), in that nesting order. The oracle runs
// only within the budget; solver failures land in the error column.
std::vector<ExperimentRow> run_experiment(const ExperimentGrid& grid);

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace tmod
