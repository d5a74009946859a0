// Test-only brute-force oracles and random generators. Everything here is
// deliberately naive and independent of the library's search/evaluation
// paths so the two can be checked against each other.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fmlab/autgroup.hpp"
#include "fmlab/formula.hpp"
#include "fmlab/structures.hpp"

namespace oracle {

// Plain recursive Tarski evaluation, no memoization, map-based environment.
inline bool brute_evaluate(const fmlab::Structure& s, const fmlab::Formula& f,
                           std::map<std::string, fmlab::Elem> env,
                           std::optional<bool> p_value = std::nullopt) {
  using fmlab::FormulaKind;
  switch (f.kind) {
    case FormulaKind::Atom: {
      fmlab::Tuple t;
      for (const auto& v : f.args) t.push_back(env.at(v));
      return s.relation(f.symbol).count(t) > 0;
    }
    case FormulaKind::Equal:
      return env.at(f.args[0]) == env.at(f.args[1]);
    case FormulaKind::PAtom:
      return p_value.value();
    case FormulaKind::Not:
      return !brute_evaluate(s, *f.left, env, p_value);
    case FormulaKind::And:
      return brute_evaluate(s, *f.left, env, p_value) &&
             brute_evaluate(s, *f.right, env, p_value);
    case FormulaKind::Or:
      return brute_evaluate(s, *f.left, env, p_value) ||
             brute_evaluate(s, *f.right, env, p_value);
    case FormulaKind::Implies:
      return !brute_evaluate(s, *f.left, env, p_value) ||
             brute_evaluate(s, *f.right, env, p_value);
    case FormulaKind::Iff:
      return brute_evaluate(s, *f.left, env, p_value) ==
             brute_evaluate(s, *f.right, env, p_value);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool universal = f.kind == FormulaKind::Forall;
      for (fmlab::Elem a = 0; a < s.size(); ++a) {
        env[f.symbol] = a;
        bool inner = brute_evaluate(s, *f.left, env, p_value);
        if (inner != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// The n!-filter oracle for the automorphism engine.
inline std::vector<fmlab::Permutation> brute_automorphisms(
    const fmlab::Structure& s) {
  std::vector<fmlab::Permutation> out;
  for (const auto& image : all_permutations(s.size())) {
    fmlab::Permutation p{std::vector<fmlab::Elem>(image.begin(), image.end())};
    if (fmlab::is_automorphism(s, p)) out.push_back(p);
  }
  return out;
}

// All-pairs shortest paths by Floyd-Warshall; -1 encodes infinity.
inline std::vector<std::vector<int>> floyd_warshall(const fmlab::Structure& s) {
  int n = s.size();
  const int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i < n; ++i) {
    for (int j : s.neighbors(i)) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (auto& row : d) {
    for (int& v : row) {
      if (v >= kInf) v = -1;
    }
  }
  return d;
}

// --- seeded random instances ---------------------------------------------------

inline fmlab::Structure random_structure(std::mt19937_64& rng, int max_size,
                                         const fmlab::Signature& sig) {
  int n = 1 + static_cast<int>(rng() % max_size);
  std::map<std::string, std::set<fmlab::Tuple>> relations;
  for (const auto& [name, arity] : sig.symbols()) {
    auto& tuples = relations[name];
    std::uint64_t count = rng() % (2 * n + 1);
    for (std::uint64_t i = 0; i < count; ++i) {
      fmlab::Tuple t(arity);
      for (int j = 0; j < arity; ++j) t[j] = static_cast<int>(rng() % n);
      tuples.insert(std::move(t));
    }
  }
  return fmlab::Structure(sig, n, std::move(relations));
}

inline fmlab::Graph random_graph(std::mt19937_64& rng, int max_vertices,
                                 int percent_edge = 35) {
  int n = 1 + static_cast<int>(rng() % max_vertices);
  fmlab::Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng() % 100 < static_cast<std::uint64_t>(percent_edge)) {
        g.add_edge(u, v);
      }
    }
  }
  return g;
}

// Random closed formulas; atoms draw variables from the quantifier scope.
inline fmlab::FormulaRef random_formula(std::mt19937_64& rng,
                                        const fmlab::Signature& sig,
                                        int budget,
                                        std::vector<std::string>& scope,
                                        bool allow_p) {
  using fmlab::Formula;
  enum { kEqual, kAtom, kP, kNot, kAnd, kOr, kImplies, kIff, kExists, kForall };
  std::vector<int> options;
  if (!scope.empty()) {
    options.push_back(kEqual);
    options.push_back(kAtom);
    options.push_back(kAtom);  // weighted toward atoms
  }
  if (allow_p) options.push_back(kP);
  if (budget > 1) {
    for (int o : {kNot, kAnd, kOr, kImplies, kIff, kExists, kExists, kForall,
                  kForall}) {
      options.push_back(o);
    }
  }
  if (options.empty()) options.push_back(kExists);

  auto pick_var = [&] { return scope[rng() % scope.size()]; };
  switch (options[rng() % options.size()]) {
    case kEqual:
      return Formula::equal(pick_var(), pick_var());
    case kAtom: {
      const auto& [name, arity] = sig.symbols()[rng() % sig.size()];
      std::vector<std::string> args;
      for (int i = 0; i < arity; ++i) args.push_back(pick_var());
      return Formula::atom(name, std::move(args));
    }
    case kP:
      return Formula::p_atom();
    case kNot:
      return Formula::negation(random_formula(rng, sig, budget - 1, scope,
                                              allow_p));
    case kAnd:
    case kOr:
    case kImplies:
    case kIff: {
      int lhs_budget = 1 + static_cast<int>(rng() % std::max(1, budget - 2));
      auto l = random_formula(rng, sig, lhs_budget, scope, allow_p);
      auto r = random_formula(rng, sig, budget - 1 - lhs_budget, scope,
                              allow_p);
      std::uint64_t c = rng() % 4;
      if (c == 0) return Formula::conjunction(l, r);
      if (c == 1) return Formula::disjunction(l, r);
      if (c == 2) return Formula::implication(l, r);
      return Formula::equivalence(l, r);
    }
    default: {
      std::string var = "q" + std::to_string(scope.size());
      scope.push_back(var);
      auto body = random_formula(rng, sig, budget - 1, scope, allow_p);
      scope.pop_back();
      return rng() % 2 ? Formula::exists(var, std::move(body))
                       : Formula::forall(var, std::move(body));
    }
  }
}

inline fmlab::FormulaRef random_sentence(std::mt19937_64& rng,
                                         const fmlab::Signature& sig,
                                         int budget, bool allow_p) {
  std::vector<std::string> scope;
  return random_formula(rng, sig, budget, scope, allow_p);
}

}  // namespace oracle
