#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fmlab/errors.hpp"

namespace fmlab {

// Universe elements are dense integer ids 0..n-1.
using Elem = int;
using Tuple = std::vector<Elem>;

// A finite relational signature: an ordered list of (name, arity) pairs.
// Names are unique, nonempty, whitespace-free; arities are >= 1.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::pair<std::string, int>> symbols);

  bool has(const std::string& name) const;
  int arity(const std::string& name) const;       // InputError if unknown
  int index_of(const std::string& name) const;    // InputError if unknown
  const std::vector<std::pair<std::string, int>>& symbols() const {
    return symbols_;
  }
  std::size_t size() const { return symbols_.size(); }

  // The signature with one symbol removed (for formula pools over sigma\{Q}).
  Signature without(const std::string& name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::pair<std::string, int>> symbols_;
};

// Parses "R/3 Q/2" style signature descriptions.
Signature parse_signature(const std::string& text);

// An undirected loop-free graph on vertices 0..vertex_count-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  void add_edge(int u, int v);  // InputError on loops, range, duplicates
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  bool operator==(const Graph&) const = default;

 private:
  int vertex_count_ = 0;
  std::set<std::pair<int, int>> edges_;      // normalized u < v
  std::vector<std::vector<int>> adjacency_;  // kept sorted
};

// A finite sigma-structure: universe 0..size-1 plus one finite tuple set per
// relation symbol. Immutable after construction; the element adjacency
// induced by the relations is precomputed so graph-flavoured queries are
// cheap and safe to run concurrently.
class Structure {
 public:
  Structure(Signature signature, int universe_size,
            std::map<std::string, std::set<Tuple>> relations);

  const Signature& signature() const { return signature_; }
  int size() const { return size_; }
  const std::set<Tuple>& relation(const std::string& name) const;
  const std::map<std::string, std::set<Tuple>>& relations() const {
    return relations_;
  }
  // Distinct elements sharing a tuple with a, sorted ascending.
  const std::vector<Elem>& neighbors(Elem a) const;
  const std::vector<std::vector<Elem>>& adjacency() const {
    return adjacency_;
  }

  bool operator==(const Structure&) const = default;

 private:
  Signature signature_;
  int size_ = 0;
  std::map<std::string, std::set<Tuple>> relations_;
  std::vector<std::vector<Elem>> adjacency_;
};

// --- graph-theoretic notions on structures ---------------------------------

// a and b are adjacent iff a != b and some tuple of some relation contains
// both of them.
bool adjacent(const Structure& s, Elem a, Elem b);
int degree(const Structure& s, Elem a);

// Path-metric distance; nullopt encodes the infinite distance between
// elements in different components.
std::optional<int> distance(const Structure& s, Elem a, Elem b);

// Empty and singleton structures count as connected (the universally
// quantified definition is vacuous there).
bool is_connected(const Structure& s);

// True iff removing any at most r-1 elements leaves a connected structure.
bool is_r_connected(const Structure& s, int r);

int component_count(const Structure& s);

// A k-cycle (k >= 3) is a closed sequence a_1..a_k with a_1 = a_k whose
// first k-1 elements form a path, so it visits k-1 distinct elements. The
// degenerate k = 3 case would have to reuse its single path edge to close,
// so no loop-free structure has a 3-cycle; for k >= 4 this is exactly a
// simple cycle on k-1 distinct vertices.
bool has_k_cycle(const Structure& s, int k);

// Conventional reading: a simple closed cycle visiting exactly c >= 3
// distinct elements.
bool has_simple_cycle_of_size(const Structure& s, int c);

struct DisjointUnion {
  Structure structure;
  // relabel[i][old id in parts[i]] = id in the union
  std::vector<std::vector<Elem>> relabel;
};

// Tag-relabelled disjoint sum; all parts must share one signature.
DisjointUnion disjoint_union(const std::vector<Structure>& parts);

// M_Q: redefines the (previously empty) relation q to hold exactly on the
// constant tuples (a,...,a).
Structure add_q_diagonal(const Structure& s, const std::string& q);

// --- the R-graph encoding of undirected graphs -----------------------------

Structure r_graph_from_graph(const Graph& g, const Signature& sig,
                             const std::string& r_symbol);
Graph graph_from_r_graph(const Structure& s, const std::string& r_symbol);
bool validate_r_graph(const Structure& s, const std::string& r_symbol);

// --- graph-level counterparts (used by constructions and the sampler) ------

bool is_connected(const Graph& g);
int component_count(const Graph& g);
bool is_acyclic(const Graph& g);
bool has_simple_cycle_of_size(const Graph& g, int c);
std::optional<int> distance(const Graph& g, int a, int b);

// --- text format ------------------------------------------------------------
//
//   # comment
//   signature R/3 Q/2
//   universe 4
//   rel R: (0,1,1) (1,0,0)
//
// Parsing is whitespace-tolerant; an omitted relation is empty. Serialization
// is canonical: symbols in signature order, tuples in sorted order, empty
// relations omitted.

Structure parse_structure(std::istream& in);
Structure parse_structure(const std::string& text);
void print_structure(const Structure& s, std::ostream& out);
std::string to_text(const Structure& s);

}  // namespace fmlab
