#include "fmlab/structures.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fmlab {

namespace {

void check_element(const Structure& s, Elem a, const char* who) {
  if (a < 0 || a >= s.size()) {
    throw InputError(std::string(who) + ": unknown element id " +
                     std::to_string(a));
  }
}

// Union-find over 0..n-1.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns false if x and y were already joined.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// The graph queries below are shared between Structure and Graph through
// this adjacency view.
struct AdjacencyView {
  int n;
  const std::vector<std::vector<int>>* lists;
  const std::vector<int>& neighbors(int v) const { return (*lists)[v]; }
};

std::optional<int> bfs_distance(const AdjacencyView& g, int a, int b) {
  if (a == b) return 0;
  std::vector<int> dist(g.n, -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v)) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      if (w == b) return dist[w];
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

int count_components(const AdjacencyView& g) {
  std::vector<char> seen(g.n, 0);
  int components = 0;
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    ++components;
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return components;
}

bool view_is_acyclic(const AdjacencyView& g) {
  DisjointSets sets(g.n);
  for (int v = 0; v < g.n; ++v) {
    for (int w : g.neighbors(v)) {
      if (v < w && !sets.unite(v, w)) return false;
    }
  }
  return true;
}

// Searches for a simple closed cycle on exactly c distinct vertices. Paths
// are rooted at their minimal vertex so each cycle is probed from one start.
bool find_cycle_of_size(const AdjacencyView& g, int c) {
  if (c < 3) throw InputError("cycle size must be at least 3");
  if (view_is_acyclic(g)) return false;
  std::vector<char> on_path(g.n, 0);
  std::vector<int> path;
  path.reserve(c);

  auto extend = [&](auto&& self, int v) -> bool {
    path.push_back(v);
    on_path[v] = 1;
    bool found = false;
    if (static_cast<int>(path.size()) == c) {
      found = std::binary_search(g.neighbors(v).begin(), g.neighbors(v).end(),
                                 path.front());
    } else {
      for (int w : g.neighbors(v)) {
        if (w <= path.front() || on_path[w]) continue;
        if (self(self, w)) {
          found = true;
          break;
        }
      }
    }
    on_path[v] = 0;
    path.pop_back();
    return found;
  };

  for (int start = 0; start + c <= g.n; ++start) {
    if (extend(extend, start)) return true;
  }
  return false;
}

bool induced_is_connected(const AdjacencyView& g,
                          const std::vector<char>& removed) {
  int first = -1, remaining = 0;
  for (int v = 0; v < g.n; ++v) {
    if (!removed[v]) {
      ++remaining;
      if (first < 0) first = v;
    }
  }
  if (remaining <= 1) return true;
  std::vector<char> seen(g.n, 0);
  std::deque<int> queue{first};
  seen[first] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v)) {
      if (removed[w] || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      queue.push_back(w);
    }
  }
  return reached == remaining;
}

}  // namespace

// --- Signature ---------------------------------------------------------------

Signature::Signature(std::vector<std::pair<std::string, int>> symbols)
    : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& [name, arity] = symbols_[i];
    if (name.empty()) throw InputError("signature: empty symbol name");
    for (char c : name) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        throw InputError("signature: symbol name contains whitespace: '" +
                         name + "'");
      }
    }
    if (arity < 1) {
      throw InputError("signature: arity of " + name + " must be >= 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[j].first == name) {
        throw InputError("signature: duplicate symbol " + name);
      }
    }
  }
}

bool Signature::has(const std::string& name) const {
  for (const auto& [n, a] : symbols_) {
    if (n == name) return true;
  }
  return false;
}

int Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].first == name) return static_cast<int>(i);
  }
  throw InputError("signature: unknown symbol " + name);
}

int Signature::arity(const std::string& name) const {
  return symbols_[index_of(name)].second;
}

Signature Signature::without(const std::string& name) const {
  std::vector<std::pair<std::string, int>> rest;
  for (const auto& sym : symbols_) {
    if (sym.first != name) rest.push_back(sym);
  }
  return Signature(std::move(rest));
}

Signature parse_signature(const std::string& text) {
  std::vector<std::pair<std::string, int>> symbols;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    auto slash = token.find('/');
    if (slash == std::string::npos || slash == 0 ||
        slash + 1 == token.size()) {
      throw InputError("signature entry must look like Name/arity: '" +
                       token + "'");
    }
    int arity = 0;
    try {
      arity = std::stoi(token.substr(slash + 1));
    } catch (const std::exception&) {
      throw InputError("bad arity in signature entry '" + token + "'");
    }
    symbols.emplace_back(token.substr(0, slash), arity);
  }
  return Signature(std::move(symbols));
}

// --- Graph -------------------------------------------------------------------

Graph::Graph(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InputError("graph: negative vertex count");
  adjacency_.resize(vertex_count);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) {
    throw InputError("graph: edge endpoint out of range");
  }
  if (u == v) throw InputError("graph: loops are not allowed");
  if (u > v) std::swap(u, v);
  if (!edges_.insert({u, v}).second) {
    throw InputError("graph: duplicate edge");
  }
  adjacency_[u].insert(
      std::lower_bound(adjacency_[u].begin(), adjacency_[u].end(), v), v);
  adjacency_[v].insert(
      std::lower_bound(adjacency_[v].begin(), adjacency_[v].end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return edges_.count({u, v}) > 0;
}

int Graph::degree(int v) const {
  return static_cast<int>(neighbors(v).size());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= vertex_count_) {
    throw InputError("graph: unknown vertex " + std::to_string(v));
  }
  return adjacency_[v];
}

// --- Structure ---------------------------------------------------------------

Structure::Structure(Signature signature, int universe_size,
                     std::map<std::string, std::set<Tuple>> relations)
    : signature_(std::move(signature)),
      size_(universe_size),
      relations_(std::move(relations)) {
  if (universe_size < 0) throw InputError("structure: negative universe size");
  for (const auto& [name, tuples] : relations_) {
    if (!signature_.has(name)) {
      throw InputError("structure: relation " + name + " not in signature");
    }
    int arity = signature_.arity(name);
    for (const Tuple& t : tuples) {
      if (static_cast<int>(t.size()) != arity) {
        throw InputError("structure: tuple arity mismatch in " + name);
      }
      for (Elem e : t) {
        if (e < 0 || e >= size_) {
          throw InputError("structure: tuple entry " + std::to_string(e) +
                           " outside universe in " + name);
        }
      }
    }
  }
  for (const auto& [name, arity] : signature_.symbols()) {
    relations_.try_emplace(name);
  }

  adjacency_.resize(size_);
  std::vector<std::set<Elem>> sets(size_);
  for (const auto& [name, tuples] : relations_) {
    for (const Tuple& t : tuples) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
          if (t[i] != t[j]) {
            sets[t[i]].insert(t[j]);
            sets[t[j]].insert(t[i]);
          }
        }
      }
    }
  }
  for (Elem a = 0; a < size_; ++a) {
    adjacency_[a].assign(sets[a].begin(), sets[a].end());
  }
}

const std::set<Tuple>& Structure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw InputError("structure: unknown relation " + name);
  }
  return it->second;
}

const std::vector<Elem>& Structure::neighbors(Elem a) const {
  check_element(*this, a, "neighbors");
  return adjacency_[a];
}

// --- operations on structures -------------------------------------------------

bool adjacent(const Structure& s, Elem a, Elem b) {
  check_element(s, a, "adjacent");
  check_element(s, b, "adjacent");
  if (a == b) return false;
  const auto& ns = s.neighbors(a);
  return std::binary_search(ns.begin(), ns.end(), b);
}

int degree(const Structure& s, Elem a) {
  check_element(s, a, "degree");
  return static_cast<int>(s.neighbors(a).size());
}

namespace {
AdjacencyView make_view(const Structure& s) {
  return AdjacencyView{s.size(), &s.adjacency()};
}
}  // namespace

std::optional<int> distance(const Structure& s, Elem a, Elem b) {
  check_element(s, a, "distance");
  check_element(s, b, "distance");
  return bfs_distance(make_view(s), a, b);
}

bool is_connected(const Structure& s) { return component_count(s) <= 1; }

int component_count(const Structure& s) {
  return count_components(make_view(s));
}

bool is_r_connected(const Structure& s, int r) {
  if (r < 1) throw InputError("is_r_connected: r must be >= 1");
  AdjacencyView view = make_view(s);
  std::vector<char> removed(s.size(), 0);
  // Every subset of at most r-1 removed elements must leave the rest
  // connected; the empty subset covers plain connectivity.
  auto choose = [&](auto&& self, int next, int still_allowed) -> bool {
    if (!induced_is_connected(view, removed)) return false;
    if (still_allowed == 0) return true;
    for (int v = next; v < s.size(); ++v) {
      removed[v] = 1;
      bool ok = self(self, v + 1, still_allowed - 1);
      removed[v] = 0;
      if (!ok) return false;
    }
    return true;
  };
  return choose(choose, 0, r - 1);
}

bool has_simple_cycle_of_size(const Structure& s, int c) {
  return find_cycle_of_size(make_view(s), c);
}

bool has_k_cycle(const Structure& s, int k) {
  if (k < 3) throw InputError("has_k_cycle: k must be >= 3");
  if (k == 3) return false;
  return has_simple_cycle_of_size(s, k - 1);
}

DisjointUnion disjoint_union(const std::vector<Structure>& parts) {
  if (parts.empty()) {
    throw InputError("disjoint_union: need at least one part");
  }
  const Signature& sig = parts.front().signature();
  for (const Structure& p : parts) {
    if (!(p.signature() == sig)) {
      throw InputError("disjoint_union: mismatched signatures");
    }
  }
  std::vector<std::vector<Elem>> relabel;
  int total = 0;
  for (const Structure& p : parts) {
    std::vector<Elem> map(p.size());
    std::iota(map.begin(), map.end(), total);
    relabel.push_back(std::move(map));
    total += p.size();
  }
  std::map<std::string, std::set<Tuple>> relations;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& [name, tuples] : parts[i].relations()) {
      auto& target = relations[name];
      for (const Tuple& t : tuples) {
        Tuple shifted(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
          shifted[j] = relabel[i][t[j]];
        }
        target.insert(std::move(shifted));
      }
    }
  }
  return DisjointUnion{Structure(sig, total, std::move(relations)),
                       std::move(relabel)};
}

Structure add_q_diagonal(const Structure& s, const std::string& q) {
  if (!s.signature().has(q)) {
    throw InputError("add_q_diagonal: " + q + " not in signature");
  }
  if (!s.relation(q).empty()) {
    throw InputError("add_q_diagonal: relation " + q + " must be empty");
  }
  int arity = s.signature().arity(q);
  auto relations = s.relations();
  auto& target = relations[q];
  for (Elem a = 0; a < s.size(); ++a) {
    target.insert(Tuple(arity, a));
  }
  return Structure(s.signature(), s.size(), std::move(relations));
}

Structure r_graph_from_graph(const Graph& g, const Signature& sig,
                             const std::string& r_symbol) {
  int arity = sig.arity(r_symbol);
  if (arity < 2) {
    throw InputError("r_graph_from_graph: arity of " + r_symbol +
                     " must be >= 2");
  }
  std::map<std::string, std::set<Tuple>> relations;
  auto& tuples = relations[r_symbol];
  for (const auto& [u, v] : g.edges()) {
    Tuple forward(arity, v);
    forward[0] = u;
    Tuple backward(arity, u);
    backward[0] = v;
    tuples.insert(std::move(forward));
    tuples.insert(std::move(backward));
  }
  return Structure(sig, g.vertex_count(), std::move(relations));
}

bool validate_r_graph(const Structure& s, const std::string& r_symbol) {
  if (!s.signature().has(r_symbol)) {
    throw InputError("validate_r_graph: unknown symbol " + r_symbol);
  }
  if (s.signature().arity(r_symbol) < 2) return false;
  for (const auto& [name, tuples] : s.relations()) {
    if (name != r_symbol && !tuples.empty()) return false;
  }
  const auto& tuples = s.relation(r_symbol);
  for (const Tuple& t : tuples) {
    if (t[0] == t[1]) return false;
    for (std::size_t i = 2; i < t.size(); ++i) {
      if (t[i] != t[1]) return false;
    }
    Tuple swapped(t.size(), t[0]);
    swapped[0] = t[1];
    if (!tuples.count(swapped)) return false;
  }
  return true;
}

Graph graph_from_r_graph(const Structure& s, const std::string& r_symbol) {
  if (!validate_r_graph(s, r_symbol)) {
    throw InputError("graph_from_r_graph: structure is not an R-graph for " +
                     r_symbol);
  }
  Graph g(s.size());
  for (const Tuple& t : s.relation(r_symbol)) {
    if (t[0] < t[1]) g.add_edge(t[0], t[1]);
  }
  return g;
}

// --- graph-level counterparts --------------------------------------------------

namespace {
AdjacencyView view_of(const Graph& g, std::vector<std::vector<int>>& storage) {
  storage.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) storage[v] = g.neighbors(v);
  return AdjacencyView{g.vertex_count(), &storage};
}
}  // namespace

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

int component_count(const Graph& g) {
  std::vector<std::vector<int>> storage;
  return count_components(view_of(g, storage));
}

bool is_acyclic(const Graph& g) {
  std::vector<std::vector<int>> storage;
  return view_is_acyclic(view_of(g, storage));
}

bool has_simple_cycle_of_size(const Graph& g, int c) {
  std::vector<std::vector<int>> storage;
  return find_cycle_of_size(view_of(g, storage), c);
}

std::optional<int> distance(const Graph& g, int a, int b) {
  std::vector<std::vector<int>> storage;
  return bfs_distance(view_of(g, storage), a, b);
}

// --- text format ----------------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c);
  });
}

// Tuple lists look like "(0,1,1) (1,0,0)"; whitespace is free-form.
std::set<Tuple> parse_tuples(const std::string& text, int arity,
                             const std::string& rel_name) {
  std::set<Tuple> tuples;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw InputError("rel " + rel_name + ": expected '(' in tuple list");
    }
    ++i;
    Tuple t;
    while (true) {
      skip_ws();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (i == start) {
        throw InputError("rel " + rel_name + ": expected integer in tuple");
      }
      t.push_back(std::stoi(text.substr(start, i - start)));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw InputError("rel " + rel_name + ": expected ',' or ')' in tuple");
    }
    if (static_cast<int>(t.size()) != arity) {
      throw InputError("rel " + rel_name + ": tuple arity mismatch");
    }
    tuples.insert(std::move(t));
    skip_ws();
  }
  return tuples;
}

}  // namespace

Structure parse_structure(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = strip_comment(raw);
    if (!blank(line)) lines.push_back(line);
  }
  if (lines.size() < 2) {
    throw InputError("structure text: expected signature and universe lines");
  }

  std::istringstream sig_line(lines[0]);
  std::string keyword;
  sig_line >> keyword;
  if (keyword != "signature") {
    throw InputError("structure text: first line must start with 'signature'");
  }
  std::string rest;
  std::getline(sig_line, rest);
  Signature sig = parse_signature(rest);

  std::istringstream uni_line(lines[1]);
  uni_line >> keyword;
  int n = -1;
  if (keyword != "universe" || !(uni_line >> n) || n < 0) {
    throw InputError("structure text: second line must be 'universe <n>'");
  }

  std::map<std::string, std::set<Tuple>> relations;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::istringstream rel_line(lines[i]);
    rel_line >> keyword;
    if (keyword != "rel") {
      throw InputError("structure text: expected 'rel' line, got: " + lines[i]);
    }
    std::string name;
    rel_line >> name;
    if (name.empty()) throw InputError("structure text: missing relation name");
    if (name.back() == ':') name.pop_back();
    if (name.empty()) throw InputError("structure text: missing relation name");
    if (!sig.has(name)) {
      throw InputError("structure text: relation " + name +
                       " not in signature");
    }
    if (relations.count(name)) {
      throw InputError("structure text: duplicate rel line for " + name);
    }
    std::string tail;
    std::getline(rel_line, tail);
    // the ':' may be attached to the name or stand alone
    auto colon = tail.find(':');
    if (colon != std::string::npos &&
        blank(tail.substr(0, colon))) {
      tail = tail.substr(colon + 1);
    }
    relations[name] = parse_tuples(tail, sig.arity(name), name);
  }
  return Structure(std::move(sig), n, std::move(relations));
}

Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

void print_structure(const Structure& s, std::ostream& out) {
  out << "signature";
  for (const auto& [name, arity] : s.signature().symbols()) {
    out << ' ' << name << '/' << arity;
  }
  out << '\n';
  out << "universe " << s.size() << '\n';
  for (const auto& [name, arity] : s.signature().symbols()) {
    const auto& tuples = s.relation(name);
    if (tuples.empty()) continue;
    out << "rel " << name << ':';
    for (const Tuple& t : tuples) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ',';
        out << t[i];
      }
      out << ')';
    }
    out << '\n';
  }
}

std::string to_text(const Structure& s) {
  std::ostringstream out;
  print_structure(s, out);
  return out.str();
}

}  // namespace fmlab
