#pragma once

#include "tmod/score.hpp"

#include <span>
#include <utility>
#include <vector>

namespace tmod {

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct TimeEdge {
  Vertex u;
  Vertex v;
  Time t;
  friend auto operator<=>(const TimeEdge&, const TimeEdge&) = default;
};

// The graph G_t on the full vertex set.
struct Snapshot {
  Time t = 1;
  std::vector<Edge> active_edges;
  std::vector<int> degrees;
  int edge_count = 0;

  int vertex_count() const { return static_cast<int>(degrees.size()); }
};

// Simple undirected graph on vertices 0..n-1.
struct StaticGraph {
  int n = 0;
  std::vector<Edge> edges;  // sorted, unique

  std::vector<std::vector<Vertex>> adjacency() const;
};

// Underlying simple graph plus a non-empty activity set per edge, over
// lifetime 1..T. Immutable once built.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  // Throws InputError naming the offending triple on self-loops, out-of-range
  // vertices or times, and repeated (edge, time) pairs.
  static TemporalGraph build(int n, int lifetime, std::span<const TimeEdge> time_edges);

  int vertex_count() const { return n_; }
  int lifetime() const { return lifetime_; }

  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted active times of edge index e.
  const std::vector<Time>& activity(std::size_t e) const { return activity_[e]; }
  bool active(std::size_t e, Time t) const;

  int edge_count(Time t) const { return edge_count_[t]; }
  int degree(Vertex v, Time t) const { return degree_[t][v]; }
  // Total degree mass at t, i.e. 2 m_t.
  int volume(Time t) const { return 2 * edge_count_[t]; }

  // Edges active at t, sorted.
  const std::vector<Edge>& edges_at(Time t) const { return edges_at_[t]; }
  // (neighbour, edge index) over the underlying graph.
  const std::vector<std::pair<Vertex, std::size_t>>& neighbours(Vertex v) const { return neighbours_[v]; }

  Snapshot snapshot(Time t) const;

  // Same vertex set, lifetime b-a+1, time s maps to a+s-1; edges left with
  // no activity are dropped.
  TemporalGraph restrict(Time a, Time b) const;

  StaticGraph underlying() const { return StaticGraph{n_, edges_}; }

  // All (u, v, t) triples with u < v, sorted by (u, v, t).
  std::vector<TimeEdge> time_edges() const;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.n_ == b.n_ && a.lifetime_ == b.lifetime_ && a.edges_ == b.edges_ && a.activity_ == b.activity_;
  }

 private:
  void index();

  int n_ = 0;
  int lifetime_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<Time>> activity_;
  // Indexed by time; slot 0 unused.
  std::vector<int> edge_count_;
  std::vector<std::vector<int>> degree_;
  std::vector<std::vector<Edge>> edges_at_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> neighbours_;
};

}  // namespace tmod
