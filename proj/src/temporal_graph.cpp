#include "tmod/temporal_graph.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tmod {

namespace {

std::string describe(const TimeEdge& te) {
  return "(" + std::to_string(te.u) + ", " + std::to_string(te.v) + ", " + std::to_string(te.t) + ")";
}

}  // namespace

std::vector<std::vector<Vertex>> StaticGraph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

TemporalGraph TemporalGraph::build(int n, int lifetime, std::span<const TimeEdge> time_edges) {
  if (n < 0) throw InputError("vertex count must be non-negative");
  if (lifetime < 1) throw InputError("lifetime must be at least 1");

  std::map<Edge, std::vector<Time>> activity;
  for (const auto& te : time_edges) {
    if (te.u < 0 || te.u >= n || te.v < 0 || te.v >= n) {
      throw InputError("vertex out of range in time-edge " + describe(te));
    }
    if (te.u == te.v) throw InputError("self-loop in time-edge " + describe(te));
    if (te.t < 1 || te.t > lifetime) throw InputError("time out of range in time-edge " + describe(te));
    Edge e{std::min(te.u, te.v), std::max(te.u, te.v)};
    activity[e].push_back(te.t);
  }

  TemporalGraph g;
  g.n_ = n;
  g.lifetime_ = lifetime;
  for (auto& [e, times] : activity) {
    std::sort(times.begin(), times.end());
    auto dup = std::adjacent_find(times.begin(), times.end());
    if (dup != times.end()) throw InputError("duplicate time-edge " + describe(TimeEdge{e.u, e.v, *dup}));
    g.edges_.push_back(e);
    g.activity_.push_back(std::move(times));
  }
  g.index();
  return g;
}

void TemporalGraph::index() {
  edge_count_.assign(lifetime_ + 1, 0);
  degree_.assign(lifetime_ + 1, std::vector<int>(n_, 0));
  edges_at_.assign(lifetime_ + 1, {});
  neighbours_.assign(n_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    neighbours_[e.u].emplace_back(e.v, i);
    neighbours_[e.v].emplace_back(e.u, i);
    for (Time t : activity_[i]) {
      ++edge_count_[t];
      ++degree_[t][e.u];
      ++degree_[t][e.v];
      edges_at_[t].push_back(e);
    }
  }
}

bool TemporalGraph::active(std::size_t e, Time t) const {
  const auto& times = activity_[e];
  return std::binary_search(times.begin(), times.end(), t);
}

Snapshot TemporalGraph::snapshot(Time t) const {
  if (t < 1 || t > lifetime_) {
    throw InputError("snapshot time " + std::to_string(t) + " outside lifetime 1.." + std::to_string(lifetime_));
  }
  Snapshot s;
  s.t = t;
  s.active_edges = edges_at_[t];
  s.degrees = degree_[t];
  s.edge_count = edge_count_[t];
  return s;
}

TemporalGraph TemporalGraph::restrict(Time a, Time b) const {
  if (a < 1 || b > lifetime_ || a > b) {
    throw InputError("invalid interval [" + std::to_string(a) + ", " + std::to_string(b) + "] for lifetime " +
                     std::to_string(lifetime_));
  }
  TemporalGraph g;
  g.n_ = n_;
  g.lifetime_ = b - a + 1;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::vector<Time> times;
    for (Time t : activity_[i]) {
      if (t >= a && t <= b) times.push_back(t - a + 1);
    }
    if (times.empty()) continue;
    g.edges_.push_back(edges_[i]);
    g.activity_.push_back(std::move(times));
  }
  g.index();
  return g;
}

std::vector<TimeEdge> TemporalGraph::time_edges() const {
  std::vector<TimeEdge> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Time t : activity_[i]) out.push_back({edges_[i].u, edges_[i].v, t});
  }
  return out;
}

}  // namespace tmod
