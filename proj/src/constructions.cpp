#include "fmlab/constructions.hpp"

#include <deque>

#include "fmlab/autgroup.hpp"
#include "fmlab/errors.hpp"

namespace fmlab {

namespace {

// Incremental builder; Graph is finalized once all vertices exist.
struct TreeBuilder {
  int next = 0;
  std::vector<std::pair<int, int>> edges;

  int vertex() { return next++; }
  void edge(int u, int v) { edges.emplace_back(u, v); }

  Graph build() const {
    Graph g(next);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
  }
};

// Appends a height-n binary tree in preorder; returns its root and pushes
// its leaves left-to-right.
int append_binary_tree(TreeBuilder& b, int n, std::vector<int>& leaves) {
  int root = b.vertex();
  if (n == 0) {
    leaves.push_back(root);
    return root;
  }
  int left = append_binary_tree(b, n - 1, leaves);
  int right = append_binary_tree(b, n - 1, leaves);
  b.edge(root, left);
  b.edge(root, right);
  return root;
}

// Appends a t_tree copy; returns the center vertex.
int append_t_tree(TreeBuilder& b, int n, std::vector<int>& leaves) {
  int center = b.vertex();
  for (int i = 0; i < 4; ++i) {
    int root = append_binary_tree(b, n, leaves);
    b.edge(center, root);
  }
  return center;
}

// Appends a path with `length` edges; returns both endpoints.
std::pair<int, int> append_path(TreeBuilder& b, int length) {
  int start = b.vertex();
  int prev = start;
  for (int i = 0; i < length; ++i) {
    int v = b.vertex();
    b.edge(prev, v);
    prev = v;
  }
  return {start, prev};
}

// Chains `edges` fresh vertices off an existing one; returns the far end.
int grow_path(TreeBuilder& b, int from, int edges) {
  int at = from;
  for (int i = 0; i < edges; ++i) {
    int v = b.vertex();
    b.edge(at, v);
    at = v;
  }
  return at;
}

}  // namespace

LabeledTree binary_tree(int n) {
  if (n < 0 || n > 12) throw InputError("binary_tree: n must be in 0..12");
  TreeBuilder b;
  LabeledTree out;
  out.root = append_binary_tree(b, n, out.leaves);
  out.graph = b.build();
  return out;
}

LabeledTree t_tree(int n) {
  if (n < 1 || n > 10) throw InputError("t_tree: n must be in 1..10");
  TreeBuilder b;
  LabeledTree out;
  out.root = append_t_tree(b, n, out.leaves);
  out.graph = b.build();
  return out;
}

Graph path_graph(int k) {
  if (k < 1) throw InputError("path_graph: k must be >= 1");
  TreeBuilder b;
  append_path(b, k);
  return b.build();
}

Graph rigid_forest(int n) {
  if (n < 1 || n > 4) throw InputError("rigid_forest: n must be in 1..4");
  TreeBuilder b;
  std::vector<int> leaves;
  for (int copy = 0; copy < n; ++copy) {
    append_t_tree(b, n, leaves);
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    int length = static_cast<int>(i) + 1;
    auto [start, end] = append_path(b, length);
    b.edge(leaves[i], start);
    (void)end;
  }
  return b.build();
}

Graph connected_model(int m) {
  if (m < 1 || m > 8) throw InputError("connected_model: m must be in 1..8");
  // Spine with m branch vertices spaced 2m+3 apart; every branch vertex
  // carries two pendant paths. All pendant and end-segment lengths are
  // pairwise distinct and exceed m+1, so nothing within distance m of a
  // branch vertex is an endpoint and no two branch vertices can trade
  // places.
  TreeBuilder b;
  auto [left_end, first_branch] = append_path(b, 3 * m + 2);
  (void)left_end;
  std::vector<int> branches{first_branch};
  for (int i = 1; i < m; ++i) {
    branches.push_back(grow_path(b, branches.back(), 2 * m + 3));
  }
  grow_path(b, branches.back(), 3 * m + 3);
  for (int i = 0; i < m; ++i) {
    grow_path(b, branches[i], m + 2 + 2 * i);
    grow_path(b, branches[i], m + 3 + 2 * i);
  }
  return b.build();
}

Graph truncated_tree_45(int depth, int root_degree) {
  if (depth < 1 || depth > 8) {
    throw InputError("truncated_tree_45: depth must be in 1..8");
  }
  if (root_degree != 4 && root_degree != 5) {
    throw InputError("truncated_tree_45: root degree must be 4 or 5");
  }
  TreeBuilder b;
  int root = b.vertex();
  std::deque<std::pair<int, int>> frontier{{root, 0}};  // (vertex, depth)
  while (!frontier.empty()) {
    auto [v, d] = frontier.front();
    frontier.pop_front();
    if (d == depth) continue;
    int children = d == 0 ? root_degree : 4;
    for (int i = 0; i < children; ++i) {
      int child = b.vertex();
      b.edge(v, child);
      frontier.emplace_back(child, d + 1);
    }
  }
  return b.build();
}

namespace {

std::vector<int> degree4_vertices(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 4) out.push_back(v);
  }
  return out;
}

// Every vertex at distance 1..k of some degree-4 vertex must have the
// required degree.
bool near_degree_ok(const Graph& g, int k, int required) {
  for (int source : degree4_vertices(g)) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (dist[v] == k) continue;
      for (int w : g.neighbors(v)) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        if (g.degree(w) != required) return false;
        queue.push_back(w);
      }
    }
  }
  return true;
}

bool check_fragment(const Graph& g, int k, int required_near_degree) {
  if (k < 1) throw InputError("fragment check: k must be >= 1");
  if (!is_acyclic(g)) return false;
  if (static_cast<int>(degree4_vertices(g).size()) < k) return false;
  return near_degree_ok(g, k, required_near_degree);
}

}  // namespace

bool check_lemma51_fragment(const Graph& g, int k) {
  return check_fragment(g, k, 3);
}

bool check_lemma52_fragment(const Graph& g, int k) {
  return check_fragment(g, k, 2);
}

GammaFlags check_gamma1m(const Graph& g, int m) {
  if (m < 3) throw InputError("check_gamma1m: m must be >= 3");
  GammaFlags flags;

  flags.no_short_cycles = true;
  for (int c = 3; c <= m - 1; ++c) {
    if (has_simple_cycle_of_size(g, c)) {
      flags.no_short_cycles = false;
      break;
    }
  }

  flags.degrees_45 = true;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    if (d != 4 && d != 5) {
      flags.degrees_45 = false;
      break;
    }
  }

  std::vector<int> deg4 = degree4_vertices(g);
  flags.enough_degree4 = static_cast<int>(deg4.size()) >= m;

  // A simple path on k <= m vertices joining distinct u, v exists exactly
  // when their distance is at most m-1.
  flags.degree4_far_apart = true;
  for (std::size_t i = 0; i < deg4.size() && flags.degree4_far_apart; ++i) {
    for (std::size_t j = i + 1; j < deg4.size(); ++j) {
      auto d = distance(g, deg4[i], deg4[j]);
      if (d && *d <= m - 1) {
        flags.degree4_far_apart = false;
        break;
      }
    }
  }

  static const Signature kGraphSig({{"R", 2}});
  flags.rigid = is_rigid(r_graph_from_graph(g, kGraphSig, "R"));
  flags.connected = is_connected(g);

  flags.all = flags.no_short_cycles && flags.degrees_45 &&
              flags.enough_degree4 && flags.degree4_far_apart && flags.rigid &&
              flags.connected;
  return flags;
}

}  // namespace fmlab
