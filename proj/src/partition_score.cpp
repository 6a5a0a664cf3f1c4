#include "tmod/partition_score.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tmod {

TemporalPartition::TemporalPartition(int n, int lifetime, int parts, std::vector<int> labels)
    : n_(n), lifetime_(lifetime), parts_(parts), labels_(std::move(labels)) {
  if (n < 0 || lifetime < 1 || parts < 1) throw InputError("invalid partition dimensions");
  if (labels_.size() != static_cast<std::size_t>(n) * lifetime) {
    throw InputError("partition must assign a label to all " + std::to_string(n * lifetime) +
                     " vertex-time pairs, got " + std::to_string(labels_.size()));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > parts) {
      throw InputError("label " + std::to_string(labels_[i]) + " of vertex " + std::to_string(i / lifetime) +
                       " at time " + std::to_string(i % lifetime + 1) + " outside 1.." + std::to_string(parts));
    }
  }
}

TemporalPartition TemporalPartition::constant(int n, int lifetime, int label) {
  return TemporalPartition(n, lifetime, label, std::vector<int>(static_cast<std::size_t>(n) * lifetime, label));
}

TemporalPartition TemporalPartition::repeated(std::span<const int> static_labels, int lifetime, int parts) {
  std::vector<int> labels;
  labels.reserve(static_labels.size() * lifetime);
  for (int l : static_labels) labels.insert(labels.end(), lifetime, l);
  return TemporalPartition(static_cast<int>(static_labels.size()), lifetime, parts, std::move(labels));
}

std::vector<int> TemporalPartition::at(Time t) const {
  std::vector<int> out(n_);
  for (Vertex v = 0; v < n_; ++v) out[v] = label(v, t);
  return out;
}

Score static_modularity(const Snapshot& graph, std::span<const int> parts) {
  if (parts.size() != graph.degrees.size()) throw InputError("partition size does not match vertex count");
  if (graph.edge_count == 0) return 0;
  std::map<int, long> inner;
  std::map<int, long> vol;
  for (const auto& e : graph.active_edges) {
    if (parts[e.u] == parts[e.v]) ++inner[parts[e.u]];
  }
  for (std::size_t v = 0; v < parts.size(); ++v) vol[parts[v]] += graph.degrees[v];
  const long m = graph.edge_count;
  Score q = 0;
  for (const auto& [label, volume] : vol) {
    q += make_score(inner[label], m) - make_score(volume * volume, 4 * m * m);
  }
  q.canonicalize();
  return q;
}

long loyalty_at(const TemporalPartition& p, Time t) {
  if (t < 1 || t >= p.lifetime()) throw InputError("loyalty_at requires 1 <= t <= T-1");
  long count = 0;
  for (Vertex v = 0; v < p.vertex_count(); ++v) count += p.label(v, t) == p.label(v, t + 1);
  return count;
}

long loyalty(const TemporalPartition& p) {
  long total = 0;
  for (Time t = 1; t < p.lifetime(); ++t) total += loyalty_at(p, t);
  return total;
}

Score normalizer(const TemporalGraph& g, const Omega& omega) {
  long edges = 0;
  for (Time t = 1; t <= g.lifetime(); ++t) edges += g.edge_count(t);
  Score mu = omega.value() * g.vertex_count() * (g.lifetime() - 1) / 2 + edges;
  mu.canonicalize();
  return mu;
}

namespace {

void check_shape(const TemporalGraph& g, const TemporalPartition& p) {
  if (p.vertex_count() != g.vertex_count() || p.lifetime() != g.lifetime()) {
    throw InputError("partition shape " + std::to_string(p.vertex_count()) + "x" + std::to_string(p.lifetime()) +
                     " does not match graph " + std::to_string(g.vertex_count()) + "x" +
                     std::to_string(g.lifetime()));
  }
}

}  // namespace

Score temporal_modularity_raw(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega) {
  check_shape(g, p);
  Score total = 0;
  for (Time t = 1; t <= g.lifetime(); ++t) {
    const long m = g.edge_count(t);
    if (m == 0) continue;
    std::map<int, long> inner;
    std::map<int, long> vol;
    for (const auto& e : g.edges_at(t)) {
      if (p.label(e.u, t) == p.label(e.v, t)) ++inner[p.label(e.u, t)];
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) vol[p.label(v, t)] += g.degree(v, t);
    for (const auto& [label, volume] : vol) {
      total += 2 * inner[label];
      total -= make_score(volume * volume, 2 * m);
    }
  }
  total += omega.value() * loyalty(p);
  total.canonicalize();
  return total;
}

Score temporal_modularity(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega) {
  Score mu = normalizer(g, omega);
  if (sgn(mu) == 0) return 0;
  Score q = temporal_modularity_raw(g, p, omega) / (2 * mu);
  q.canonicalize();
  return q;
}

Score kappa(const TemporalGraph& g, const Omega& omega, Vertex u, Vertex u2, Time t, Time t2) {
  Score mu = normalizer(g, omega);
  if (sgn(mu) == 0) return 0;
  Score k = 0;
  if (t == t2 - 1 && u == u2) k += omega.value();
  if (t == t2) {
    const long m = g.edge_count(t);
    if (m > 0) {
      Edge e{std::min(u, u2), std::max(u, u2)};
      const auto& active = g.edges_at(t);
      if (u != u2 && std::binary_search(active.begin(), active.end(), e)) k += 1;
      k -= make_score(static_cast<long>(g.degree(u, t)) * g.degree(u2, t), 2 * m);
    }
  }
  k /= 2 * mu;
  k.canonicalize();
  return k;
}

Score temporal_modularity_sumform(const TemporalGraph& g, const TemporalPartition& p, const Omega& omega) {
  check_shape(g, p);
  Score total = 0;
  const int n = g.vertex_count();
  const int T = g.lifetime();
  for (Vertex u = 0; u < n; ++u) {
    for (Time t = 1; t <= T; ++t) {
      for (Vertex u2 = 0; u2 < n; ++u2) {
        for (Time t2 = 1; t2 <= T; ++t2) {
          if (p.label(u, t) == p.label(u2, t2)) total += kappa(g, omega, u, u2, t, t2);
        }
      }
    }
  }
  total.canonicalize();
  return total;
}

}  // namespace tmod
