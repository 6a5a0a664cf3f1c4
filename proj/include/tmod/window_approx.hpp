#pragma once

#include "tmod/dp_engine.hpp"
#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"
#include "tmod/treedec.hpp"

#include <vector>

namespace tmod {

// Split of [1, T] into consecutive windows of at most d timesteps.
struct WindowPlan {
  std::vector<Time> breakpoints;      // 0 = t_0 < t_1 < ... < t_l = T
  std::vector<Score> window_scores;   // exact c-modularity of each window
  Score total;
};

struct ApproxResult {
  Score raw;
  Score normalized;
  Score guarantee_factor;  // 1 - (1/c + 2/d), possibly negative
  WindowPlan plan;
};

Score guarantee_factor(int parts, int window);

// Best sum of exact per-window c-modularities over all splits into windows of
// length <= d. Windows reuse the decomposition of the full underlying graph.
// Ties prefer the shortest first window.
ApproxResult windowed_optimum(const TemporalGraph& g, const Omega& omega, int parts, int window,
                              const NiceTreeDecomposition& ntd, const DpOptions& options = {});

// Builds a min-fill decomposition, nicifies it at balanced_root and runs
// windowed_optimum.
ApproxResult approx_temporal_modularity(const TemporalGraph& g, const Omega& omega, int parts, int window,
                                        const DpOptions& options = {});

}  // namespace tmod
