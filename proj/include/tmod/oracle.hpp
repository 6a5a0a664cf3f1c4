#pragma once

#include "tmod/partition_score.hpp"
#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"

#include <cstdint>

namespace tmod {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct OracleResult {
  Score best_raw;
  Score best_normalized;
  TemporalPartition witness;
};

// Number of labellings of `items` elements with at most `parts` labels, up to
// label permutation (restricted-growth strings). Saturates at UINT64_MAX.
std::uint64_t restricted_growth_count(int items, int parts);

// Exact maximum of the non-normalised objective over all partitions with at
// most c parts. Enumerates restricted-growth strings over (v, t) in
// vertex-major order. Throws BudgetExceeded before enumerating if the count
// exceeds `budget`.
OracleResult brute_force_c_modularity(const TemporalGraph& g, const Omega& omega, int parts,
                                      std::uint64_t budget = kDefaultBudget);

// Unrestricted optimum (c = nT).
OracleResult brute_force_modularity(const TemporalGraph& g, const Omega& omega,
                                    std::uint64_t budget = kDefaultBudget);

// Maximum static modularity over all set partitions of the snapshot's vertices.
Score brute_force_static(const Snapshot& graph, std::uint64_t budget = kDefaultBudget);

}  // namespace tmod
