#pragma once

#include "tmod/temporal_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmod {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;               // sorted
  std::vector<std::pair<int, int>> tree_edges;          // node ids

  int width() const;
  std::vector<std::vector<int>> tree_adjacency() const;
};

enum class Violation {
  None,
  NotATree,
  VertexOutOfRange,
  VertexNotCovered,
  EdgeNotCovered,
  SubtreeDisconnected,
  NiceShape,
};

struct ValidationReport {
  Violation violation = Violation::None;
  std::string message;
  std::vector<int> witness;  // offending vertices or node ids

  bool ok() const { return violation == Violation::None; }
  explicit operator bool() const { return ok(); }
};

// Min-fill elimination ordering, ties broken by lowest vertex id.
TreeDecomposition heuristic_tree_decomposition(const StaticGraph& graph);

// Tree-ness plus vertex coverage, edge coverage and per-vertex connectivity.
// Reports the first violation found.
ValidationReport validate(const TreeDecomposition& td, const StaticGraph& graph);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  Vertex vertex = -1;  // introduced or forgotten vertex
  std::vector<Vertex> bag;
  std::vector<int> children;
};

// Rooted nice decomposition. Children always precede their parent in
// `nodes`, and the root is the last node.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int width() const;
  // Plain decomposition view with the same bags and tree.
  TreeDecomposition as_tree_decomposition() const;
};

// Root whose nice form keeps joins lopsided: minimises the sum over joins of
// the squared product of the forgotten vertex counts on both sides.
int balanced_root(const TreeDecomposition& td);

// Throws InputError if td is not valid for `graph`. Join children are taken
// in increasing order of forgotten vertex count.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, const StaticGraph& graph, int root = 0);

// Node-kind structure, empty root and leaves, child ordering, and validity of
// the underlying decomposition.
ValidationReport validate_nice(const NiceTreeDecomposition& ntd, const StaticGraph& graph);

}  // namespace tmod
