#pragma once

#include <vector>

#include "fmlab/structures.hpp"

namespace fmlab {

// A rooted tree with its leaves recorded in construction order, so leaf
// enumeration is deterministic across runs.
struct LabeledTree {
  Graph graph;
  int root = 0;
  std::vector<int> leaves;
};

// The complete binary tree of height n: 2^(n+1)-1 vertices, 2^n leaves,
// vertices labelled in preorder. The height-0 tree is a single vertex that
// counts as both root and leaf.
LabeledTree binary_tree(int n);  // 0 <= n <= 12

// Four disjoint binary trees of height n joined at a fresh center vertex:
// 2^(n+3)-3 vertices, 2^(n+2) leaves, center degree 4.
LabeledTree t_tree(int n);  // 1 <= n <= 10

// The path on k+1 vertices 0..k with edges {i, i+1}.
Graph path_graph(int k);  // k >= 1

// n disjoint copies of t_tree(n) with pendant paths of pairwise distinct
// lengths 1..n*2^(n+2) attached to the leaves (copy order first, preorder
// within each copy; the path joins at its 0 end). Rigid by construction:
// the distinct pendant lengths separate every leaf.
Graph rigid_forest(int n);  // 1 <= n <= 4

// A single connected tree with exactly m degree-4 vertices spread along a
// spine, every vertex within distance m of a degree-4 vertex having degree
// 2. Pendant and end-segment lengths are pairwise distinct, which also
// makes the tree rigid.
Graph connected_model(int m);  // 1 <= m <= 8

// The depth-`depth` ball of the infinite tree whose root has degree
// `root_degree` (4 or 5) and all other vertices degree 5; the cut vertices
// are leaves, so the degree discipline intentionally fails there.
Graph truncated_tree_45(int depth, int root_degree);  // 1 <= depth <= 8

// Acyclic, at least k degree-4 vertices, and every vertex at distance 1..k
// from some degree-4 vertex has degree exactly 3.
bool check_lemma51_fragment(const Graph& g, int k);

// Same with required degree 2 near the degree-4 vertices.
bool check_lemma52_fragment(const Graph& g, int k);

// The semantic graph-property checkers for the level-m fragment.
struct GammaFlags {
  bool no_short_cycles = false;    // no cycle on 3..m-1 distinct vertices
  bool degrees_45 = false;         // every degree is 4 or 5
  bool enough_degree4 = false;     // at least m vertices of degree 4
  bool degree4_far_apart = false;  // no path on <= m vertices joining two
                                   // distinct degree-4 vertices
  bool rigid = false;
  bool connected = false;
  bool all = false;
};

GammaFlags check_gamma1m(const Graph& g, int m);

}  // namespace fmlab
