#pragma once

// Test-only helpers: random instances and reference computations written
// directly from the objective's definition, independent of the library's
// scoring and search code.

#include "tmod/partition_score.hpp"
#include "tmod/temporal_graph.hpp"

#include <functional>
#include <random>
#include <vector>

namespace tmod::ref {

inline TemporalGraph random_temporal_graph(std::mt19937_64& rng, int n, int lifetime, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<TimeEdge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      for (Time t = 1; t <= lifetime; ++t) {
        if (coin(rng)) edges.push_back({u, v, t});
      }
    }
  }
  return TemporalGraph::build(n, lifetime, edges);
}

inline TemporalPartition random_partition(std::mt19937_64& rng, int n, int lifetime, int parts) {
  std::uniform_int_distribution<int> label(1, parts);
  std::vector<int> labels(static_cast<std::size_t>(n) * lifetime);
  for (auto& l : labels) l = label(rng);
  return TemporalPartition(n, lifetime, parts, std::move(labels));
}

// Non-normalised objective evaluated from scratch: per snapshot and part,
// 2 * internal edges minus squared volume over 2 m_t, plus omega times the
// number of label-preserving consecutive steps.
inline Score reference_raw(const TemporalGraph& g, const std::vector<int>& labels, int parts, const Score& omega) {
  const int n = g.vertex_count();
  const int T = g.lifetime();
  auto lab = [&](Vertex v, Time t) { return labels[static_cast<std::size_t>(v) * T + (t - 1)]; };
  Score total = 0;
  for (Time t = 1; t <= T; ++t) {
    std::vector<long> internal(parts + 1, 0), vol(parts + 1, 0);
    long m = 0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      if (!g.active(e, t)) continue;
      const auto [u, v] = g.edges()[e];
      ++m;
      vol[lab(u, t)] += 1;
      vol[lab(v, t)] += 1;
      if (lab(u, t) == lab(v, t)) internal[lab(u, t)] += 1;
    }
    if (m == 0) continue;
    for (int a = 1; a <= parts; ++a) {
      Score term = Score(2 * internal[a]) - Score(vol[a] * vol[a]) / Score(2 * m);
      total += term;
    }
  }
  long loyal = 0;
  for (Vertex v = 0; v < n; ++v) {
    for (Time t = 1; t < T; ++t) loyal += lab(v, t) == lab(v, t + 1);
  }
  total += omega * loyal;
  total.canonicalize();
  return total;
}

// Calls f on every labelling of the n*T slots with labels 1..parts
// (parts^(n*T) labellings, no symmetry reduction).
inline void for_each_labelling(int slots, int parts, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> labels(slots, 1);
  while (true) {
    f(labels);
    int i = 0;
    while (i < slots && labels[i] == parts) labels[i++] = 1;
    if (i == slots) return;
    ++labels[i];
  }
}

inline Score reference_optimum(const TemporalGraph& g, int parts, const Score& omega) {
  const int slots = g.vertex_count() * g.lifetime();
  bool first = true;
  Score best;
  for_each_labelling(slots, parts, [&](const std::vector<int>& labels) {
    Score s = reference_raw(g, labels, parts, omega);
    if (first || s > best) best = s, first = false;
  });
  return best;
}

}  // namespace tmod::ref
