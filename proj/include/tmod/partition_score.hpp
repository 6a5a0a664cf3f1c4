#pragma once

#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"

#include <span>
#include <vector>

namespace tmod {

// Total assignment of a part label in 1..c to every (vertex, time) pair.
class TemporalPartition {
 public:
  TemporalPartition() = default;
  // labels are vertex-major: labels[v * T + (t - 1)].
  TemporalPartition(int n, int lifetime, int parts, std::vector<int> labels);

  static TemporalPartition constant(int n, int lifetime, int label = 1);
  // Partition that repeats a static vertex labelling at every time.
  static TemporalPartition repeated(std::span<const int> static_labels, int lifetime, int parts);

  int vertex_count() const { return n_; }
  int lifetime() const { return lifetime_; }
  int parts() const { return parts_; }

  int label(Vertex v, Time t) const { return labels_[static_cast<std::size_t>(v) * lifetime_ + (t - 1)]; }
  const std::vector<int>& labels() const { return labels_; }
  // Labels of all vertices at time t.
  std::vector<int> at(Time t) const;

  friend bool operator==(const TemporalPartition&, const TemporalPartition&) = default;

 private:
  int n_ = 0;
  int lifetime_ = 1;
  int parts_ = 1;
  std::vector<int> labels_;
};

// Static modularity; 0 when the snapshot has no edges.
Score static_modularity(const Snapshot& graph, std::span<const int> parts);

// Number of loyal (vertex, t) pairs over t = 1..T-1.
long loyalty(const TemporalPartition& p);
// Loyal vertices between t and t+1; requires 1 <= t <= T-1.
long loyalty_at(const TemporalPartition& p, Time t);

// mu = omega * n * (T-1) / 2 + sum_t m_t.
Score normalizer(const TemporalGraph& g, const Omega& omega);

// Non-normalised temporal modularity. Snapshots without edges contribute 0.
Score temporal_modularity_raw(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega);

// raw / (2 mu); 0 when mu = 0.
Score temporal_modularity(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega);

// Pairwise weight of ((u, t), (u2, t2)) in the sum form of the objective.
Score kappa(const TemporalGraph& g, const Omega& omega, Vertex u, Vertex u2, Time t, Time t2);

// Sum over ordered pairs of same-part (vertex, time) pairs of kappa; equals
// temporal_modularity exactly.
Score temporal_modularity_sumform(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega);

}  // namespace tmod
