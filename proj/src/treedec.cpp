#include "tmod/treedec.hpp"

#include <unordered_map>

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace tmod {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::vector<std::vector<int>> TreeDecomposition::tree_adjacency() const {
  std::vector<std::vector<int>> adj(bags.size());
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

TreeDecomposition heuristic_tree_decomposition(const StaticGraph& graph) {
  const int n = graph.n;
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }

  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : graph.edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }

  auto fill_in = [&](Vertex v) {
    long missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
      for (auto b = std::next(a); b != adj[v].end(); ++b) missing += !adj[*a].count(*b);
    }
    return missing;
  };

  std::vector<bool> eliminated(n, false);
  std::vector<Vertex> order;
  std::vector<int> position(n, -1);
  std::vector<std::vector<Vertex>> bag_of(n);

  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    long best = std::numeric_limits<long>::max();
    for (Vertex v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      long f = fill_in(v);
      if (f < best) {
        best = f;
        pick = v;
      }
    }
    std::vector<Vertex> bag(adj[pick].begin(), adj[pick].end());
    bag.push_back(pick);
    std::sort(bag.begin(), bag.end());
    bag_of[pick] = bag;
    for (auto a = adj[pick].begin(); a != adj[pick].end(); ++a) {
      for (auto b = std::next(a); b != adj[pick].end(); ++b) {
        adj[*a].insert(*b);
        adj[*b].insert(*a);
      }
    }
    for (Vertex u : adj[pick]) adj[u].erase(pick);
    adj[pick].clear();
    eliminated[pick] = true;
    position[pick] = step;
    order.push_back(pick);
  }

  // Bag i belongs to order[i]; it attaches to the bag of its earliest-eliminated
  // later neighbour, or to the next bag when it has none (disconnected parts).
  td.bags.resize(n);
  for (int i = 0; i < n; ++i) td.bags[i] = bag_of[order[i]];
  for (int i = 0; i + 1 < n; ++i) {
    int parent = n;
    for (Vertex u : td.bags[i]) {
      if (u != order[i]) parent = std::min(parent, position[u]);
    }
    if (parent == n) parent = i + 1;
    td.tree_edges.emplace_back(i, parent);
  }
  return td;
}

ValidationReport validate(const TreeDecomposition& td, const StaticGraph& graph) {
  const int nodes = static_cast<int>(td.bags.size());
  auto fail = [](Violation v, std::string msg, std::vector<int> witness) {
    return ValidationReport{v, std::move(msg), std::move(witness)};
  };

  if (nodes == 0) return fail(Violation::NotATree, "decomposition has no nodes", {});
  if (static_cast<int>(td.tree_edges.size()) != nodes - 1) {
    return fail(Violation::NotATree,
                "tree with " + std::to_string(nodes) + " nodes needs " + std::to_string(nodes - 1) + " edges, got " +
                    std::to_string(td.tree_edges.size()),
                {});
  }
  // Union-find: n-1 edges and no cycle means a spanning tree.
  std::vector<int> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nodes || b < 0 || b >= nodes) {
      return fail(Violation::NotATree, "tree edge references unknown node", {a, b});
    }
    int ra = find(a), rb = find(b);
    if (ra == rb) {
      return fail(Violation::NotATree,
                  "tree edge " + std::to_string(a) + "-" + std::to_string(b) + " closes a cycle", {a, b});
    }
    parent[ra] = rb;
  }

  std::vector<std::vector<int>> holders(graph.n);
  for (int b = 0; b < nodes; ++b) {
    for (Vertex v : td.bags[b]) {
      if (v < 0 || v >= graph.n) {
        return fail(Violation::VertexOutOfRange,
                    "bag " + std::to_string(b) + " contains unknown vertex " + std::to_string(v), {v});
      }
      holders[v].push_back(b);
    }
  }
  for (Vertex v = 0; v < graph.n; ++v) {
    if (holders[v].empty()) {
      return fail(Violation::VertexNotCovered, "vertex " + std::to_string(v) + " is in no bag", {v});
    }
  }

  std::vector<std::vector<Vertex>> sorted_bags = td.bags;
  for (auto& b : sorted_bags) std::sort(b.begin(), b.end());
  for (const auto& e : graph.edges) {
    bool covered = false;
    for (int b : holders[e.u]) {
      if (std::binary_search(sorted_bags[b].begin(), sorted_bags[b].end(), e.v)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      return fail(Violation::EdgeNotCovered,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag", {e.u, e.v});
    }
  }

  auto adj = td.tree_adjacency();
  std::vector<int> mark(nodes, -1);
  for (Vertex v = 0; v < graph.n; ++v) {
    for (int b : holders[v]) mark[b] = v;
    std::vector<int> stack{holders[v].front()};
    std::vector<bool> seen(nodes, false);
    seen[holders[v].front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : adj[x]) {
        if (!seen[y] && mark[y] == v) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (reached != holders[v].size()) {
      return fail(Violation::SubtreeDisconnected,
                  "bags containing vertex " + std::to_string(v) + " do not form a connected subtree", {v});
    }
  }
  return {};
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
  return w;
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
  TreeDecomposition td;
  for (const auto& node : nodes) td.bags.push_back(node.bag);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int c : nodes[i].children) td.tree_edges.emplace_back(c, static_cast<int>(i));
  }
  return td;
}

namespace {

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceTreeDecomposition& out) : out_(out) {}

  int leaf() { return push({NiceKind::Leaf, -1, {}, {}}); }

  // Forget then introduce until the bag of `node` equals `target`.
  int morph(int node, const std::vector<Vertex>& target) {
    std::vector<Vertex> bag = out_.nodes[node].bag;
    for (Vertex v : std::vector<Vertex>(bag)) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      node = push({NiceKind::Forget, v, bag, {node}});
    }
    for (Vertex v : target) {
      if (std::binary_search(bag.begin(), bag.end(), v)) continue;
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      node = push({NiceKind::Introduce, v, bag, {node}});
    }
    return node;
  }

  int join(int a, int b) {
    std::vector<Vertex> bag = out_.nodes[a].bag;
    return push({NiceKind::Join, -1, std::move(bag), {a, b}});
  }

 private:
  int push(NiceNode node) {
    out_.nodes.push_back(std::move(node));
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  NiceTreeDecomposition& out_;
};

}  // namespace

namespace {

struct RootedTree {
  std::vector<int> order;   // children before parents
  std::vector<int> parent;  // root is its own parent
  std::vector<long> forgotten;  // vertices whose highest bag lies in the subtree
};

RootedTree root_tree(const TreeDecomposition& td, const std::vector<std::vector<int>>& adj, int root) {
  const int nodes = static_cast<int>(td.bags.size());
  RootedTree rt;
  rt.parent.assign(nodes, -1);
  std::vector<int> depth(nodes, 0);
  std::vector<int> stack{root};
  rt.parent[root] = root;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    rt.order.push_back(x);
    for (int y : adj[x]) {
      if (rt.parent[y] == -1) {
        rt.parent[y] = x;
        depth[y] = depth[x] + 1;
        stack.push_back(y);
      }
    }
  }
  std::reverse(rt.order.begin(), rt.order.end());

  std::unordered_map<Vertex, int> top;
  for (int x = 0; x < nodes; ++x) {
    for (Vertex v : td.bags[x]) {
      auto [it, inserted] = top.emplace(v, x);
      if (!inserted && depth[x] < depth[it->second]) it->second = x;
    }
  }
  rt.forgotten.assign(nodes, 0);
  for (const auto& [v, x] : top) ++rt.forgotten[x];
  for (int x : rt.order) {
    if (x != root) rt.forgotten[rt.parent[x]] += rt.forgotten[x];
  }
  return rt;
}

// Children of x ordered by forgotten mass, smallest first.
std::vector<std::vector<int>> ordered_children(const RootedTree& rt, int root) {
  std::vector<std::vector<int>> kids(rt.parent.size());
  for (int x : rt.order) {
    if (x != root) kids[rt.parent[x]].push_back(x);
  }
  for (auto& k : kids) {
    std::sort(k.begin(), k.end());
  }
  return kids;
}

}  // namespace

int balanced_root(const TreeDecomposition& td) {
  const int nodes = static_cast<int>(td.bags.size());
  if (nodes == 0) throw InputError("decomposition has no nodes");
  const auto adj = td.tree_adjacency();
  int best = 0;
  double best_cost = 0;
  for (int r = 0; r < nodes; ++r) {
    const RootedTree rt = root_tree(td, adj, r);
    const auto kids = ordered_children(rt, r);
    double cost = 0;
    for (int x = 0; x < nodes; ++x) {
      if (kids[x].size() < 2) continue;
      double acc = 1 + static_cast<double>(rt.forgotten[kids[x][0]]);
      for (std::size_t i = 1; i < kids[x].size(); ++i) {
        const double side = 1 + static_cast<double>(rt.forgotten[kids[x][i]]);
        cost += acc * acc * side * side;
        acc += side - 1;
      }
    }
    if (r == 0 || cost < best_cost) {
      best = r;
      best_cost = cost;
    }
  }
  return best;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const StaticGraph& graph, int root) {
  if (auto report = validate(td, graph); !report) throw InputError("invalid tree decomposition: " + report.message);
  const int nodes = static_cast<int>(td.bags.size());
  if (root < 0 || root >= nodes) throw InputError("root node out of range");

  std::vector<std::vector<Vertex>> bags = td.bags;
  for (auto& b : bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  const RootedTree rt = root_tree(td, td.tree_adjacency(), root);
  const auto kids = ordered_children(rt, root);

  NiceTreeDecomposition out;
  NiceBuilder builder(out);
  std::vector<int> top(nodes, -1);
  for (int x : rt.order) {
    int current = -1;
    if (kids[x].empty()) {
      current = builder.morph(builder.leaf(), bags[x]);
    } else {
      for (int k : kids[x]) {
        int branch = builder.morph(top[k], bags[x]);
        current = current == -1 ? branch : builder.join(current, branch);
      }
    }
    top[x] = current;
  }
  builder.morph(top[root], {});
  return out;
}

ValidationReport validate_nice(const NiceTreeDecomposition& ntd, const StaticGraph& graph) {
  auto fail = [](std::string msg, std::vector<int> witness) {
    return ValidationReport{Violation::NiceShape, std::move(msg), std::move(witness)};
  };
  if (ntd.nodes.empty()) return fail("nice decomposition has no nodes", {});
  if (!ntd.nodes.back().bag.empty()) return fail("root bag is not empty", {ntd.root()});

  std::vector<int> parents(ntd.nodes.size(), 0);
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& node = ntd.nodes[i];
    const int id = static_cast<int>(i);
    if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
        std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
      return fail("bag of node " + std::to_string(id) + " is not a sorted set", {id});
    }
    for (int c : node.children) {
      if (c < 0 || c >= id) return fail("child of node " + std::to_string(id) + " does not precede it", {id, c});
      ++parents[c];
    }
    auto without = [](std::vector<Vertex> b, Vertex v) {
      auto it = std::find(b.begin(), b.end(), v);
      if (it == b.end()) return std::optional<std::vector<Vertex>>{};
      b.erase(it);
      return std::optional<std::vector<Vertex>>{b};
    };
    switch (node.kind) {
      case NiceKind::Leaf:
        if (!node.children.empty() || !node.bag.empty()) return fail("leaf " + std::to_string(id) + " is not empty", {id});
        break;
      case NiceKind::Introduce: {
        if (node.children.size() != 1) return fail("introduce node " + std::to_string(id) + " needs one child", {id});
        auto reduced = without(node.bag, node.vertex);
        if (!reduced || *reduced != ntd.nodes[node.children[0]].bag) {
          return fail("introduce node " + std::to_string(id) + " bag mismatch", {id, node.vertex});
        }
        break;
      }
      case NiceKind::Forget: {
        if (node.children.size() != 1) return fail("forget node " + std::to_string(id) + " needs one child", {id});
        auto reduced = without(ntd.nodes[node.children[0]].bag, node.vertex);
        if (!reduced || *reduced != node.bag) {
          return fail("forget node " + std::to_string(id) + " bag mismatch", {id, node.vertex});
        }
        break;
      }
      case NiceKind::Join:
        if (node.children.size() != 2) return fail("join node " + std::to_string(id) + " needs two children", {id});
        if (ntd.nodes[node.children[0]].bag != node.bag || ntd.nodes[node.children[1]].bag != node.bag) {
          return fail("join node " + std::to_string(id) + " bag mismatch", {id});
        }
        break;
    }
  }
  for (std::size_t i = 0; i + 1 < ntd.nodes.size(); ++i) {
    if (parents[i] != 1) return fail("node " + std::to_string(i) + " does not have exactly one parent", {int(i)});
  }
  if (parents.back() != 0) return fail("root has a parent", {ntd.root()});
  return validate(ntd.as_tree_decomposition(), graph);
}

}  // namespace tmod
