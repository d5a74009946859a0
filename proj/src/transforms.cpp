#include "fmlab/transforms.hpp"

#include <map>
#include <set>
#include <tuple>

#include "fmlab/errors.hpp"
#include "fmlab/eval.hpp"

namespace fmlab {

namespace {

// Bound-variable names in generated sentences and pools: x, y, z, u, w,
// then v6, v7, ...
std::string var_name(int i) {
  static const char* kNames[] = {"x", "y", "z", "u", "w"};
  if (i < 5) return kNames[i];
  return "v" + std::to_string(i + 1);
}

class VarGen {
 public:
  std::string fresh() { return var_name(next_++); }

 private:
  int next_ = 0;
};

FormulaRef clone_leaf(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom:
      return Formula::atom(f.symbol, f.args);
    case FormulaKind::Equal:
      return Formula::equal(f.args[0], f.args[1]);
    case FormulaKind::PAtom:
      return Formula::p_atom();
    default:
      throw InputError("clone_leaf: not a leaf");
  }
}

FormulaRef rebuild(const Formula& f, FormulaRef left, FormulaRef right) {
  switch (f.kind) {
    case FormulaKind::Not:
      return Formula::negation(std::move(left));
    case FormulaKind::And:
      return Formula::conjunction(std::move(left), std::move(right));
    case FormulaKind::Or:
      return Formula::disjunction(std::move(left), std::move(right));
    case FormulaKind::Implies:
      return Formula::implication(std::move(left), std::move(right));
    case FormulaKind::Iff:
      return Formula::equivalence(std::move(left), std::move(right));
    case FormulaKind::Exists:
      return Formula::exists(f.symbol, std::move(left));
    case FormulaKind::Forall:
      return Formula::forall(f.symbol, std::move(left));
    default:
      throw InputError("rebuild: not a composite node");
  }
}

}  // namespace

// --- relativization -----------------------------------------------------------

namespace {

FormulaRef relativize_rec(const Formula& f, const std::string& q,
                          int q_arity) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
    case FormulaKind::PAtom:
      return clone_leaf(f);
    case FormulaKind::Exists: {
      FormulaRef guard = Formula::atom(
          q, std::vector<std::string>(q_arity, f.symbol));
      return Formula::exists(
          f.symbol, Formula::conjunction(std::move(guard),
                                         relativize_rec(*f.left, q, q_arity)));
    }
    case FormulaKind::Forall: {
      FormulaRef guard = Formula::atom(
          q, std::vector<std::string>(q_arity, f.symbol));
      return Formula::forall(
          f.symbol, Formula::implication(std::move(guard),
                                         relativize_rec(*f.left, q, q_arity)));
    }
    default:
      return rebuild(f, relativize_rec(*f.left, q, q_arity),
                     f.right ? relativize_rec(*f.right, q, q_arity) : nullptr);
  }
}

}  // namespace

FormulaRef relativize_q(const Formula& f, const Signature& sig,
                        const std::string& q) {
  if (!sig.has(q)) throw InputError("relativize_q: " + q + " not in signature");
  if (mentions_symbol(f, q)) {
    throw InputError("relativize_q: formula already mentions " + q);
  }
  return relativize_rec(f, q, sig.arity(q));
}

// --- P elimination --------------------------------------------------------------

namespace {

FormulaRef eliminate_p(const FormulaRef& f, bool negated_replacement) {
  if (!contains_p_atom(*f)) return f;
  if (f->kind == FormulaKind::PAtom) {
    FormulaRef tautology = Formula::forall("x", Formula::equal("x", "x"));
    return negated_replacement ? Formula::negation(std::move(tautology))
                               : tautology;
  }
  FormulaRef left =
      f->left ? eliminate_p(f->left, negated_replacement) : nullptr;
  FormulaRef right =
      f->right ? eliminate_p(f->right, negated_replacement) : nullptr;
  return rebuild(*f, std::move(left), std::move(right));
}

}  // namespace

FormulaRef prime_transform(const FormulaRef& f) {
  return eliminate_p(f, false);
}

FormulaRef double_prime_transform(const FormulaRef& f) {
  return eliminate_p(f, true);
}

// --- generated sentences ---------------------------------------------------------

namespace {

// !Q(v,...,v): v is not one of the tagged elements.
FormulaRef not_tagged(const std::string& q, int q_arity,
                      const std::string& v) {
  return Formula::negation(
      Formula::atom(q, std::vector<std::string>(q_arity, v)));
}

FormulaRef tagged(const std::string& q, int q_arity, const std::string& v) {
  return Formula::atom(q, std::vector<std::string>(q_arity, v));
}

// Adjacency expanded over the finite signature: x != y and some tuple of
// some relation mentions both, the remaining positions existentially bound.
FormulaRef adjacency(const Signature& sig, const std::string& x,
                     const std::string& y, VarGen& vars) {
  std::vector<FormulaRef> cases;
  for (const auto& [name, arity] : sig.symbols()) {
    for (int i = 0; i < arity; ++i) {
      for (int j = 0; j < arity; ++j) {
        if (i == j) continue;
        std::vector<std::string> args(arity);
        std::vector<std::string> bound;
        for (int p = 0; p < arity; ++p) {
          if (p == i) {
            args[p] = x;
          } else if (p == j) {
            args[p] = y;
          } else {
            args[p] = vars.fresh();
            bound.push_back(args[p]);
          }
        }
        FormulaRef hit = Formula::atom(name, std::move(args));
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
          hit = Formula::exists(*it, std::move(hit));
        }
        cases.push_back(std::move(hit));
      }
    }
  }
  return Formula::conjunction(Formula::negation(Formula::equal(x, y)),
                              Formula::disjunction_of(std::move(cases)));
}

// x has exactly d untagged neighbors: d distinct adjacent untagged
// witnesses plus a completeness clause. The witnesses are nested one
// existential at a time with their guards in front, so evaluation prunes a
// failing witness before touching the deeper levels.
FormulaRef degree_exactly(const Signature& sig, const std::string& q,
                          int q_arity, const std::string& x, int d,
                          VarGen& vars) {
  std::vector<std::string> ys;
  for (int i = 0; i < d; ++i) ys.push_back(vars.fresh());

  std::string z = vars.fresh();
  std::vector<FormulaRef> hits;
  for (const std::string& y : ys) hits.push_back(Formula::equal(z, y));
  FormulaRef body = Formula::forall(
      z, Formula::implication(
             Formula::conjunction(not_tagged(q, q_arity, z),
                                  adjacency(sig, x, z, vars)),
             Formula::disjunction_of(std::move(hits))));

  for (int i = d - 1; i >= 0; --i) {
    std::vector<FormulaRef> guards;
    guards.push_back(not_tagged(q, q_arity, ys[i]));
    guards.push_back(adjacency(sig, x, ys[i], vars));
    for (int j = 0; j < i; ++j) {
      guards.push_back(Formula::negation(Formula::equal(ys[i], ys[j])));
    }
    guards.push_back(std::move(body));
    body = Formula::exists(ys[i], Formula::conjunction_of(std::move(guards)));
  }
  return body;
}

void check_q_r(const Signature& sig, const std::string& q,
               const std::string& r) {
  if (!sig.has(q)) throw InputError("unknown symbol " + q);
  if (!sig.has(r)) throw InputError("unknown symbol " + r);
  if (q == r) throw InputError("tag and graph symbols must differ");
  if (sig.arity(r) < 2) {
    throw InputError("graph symbol " + r + " needs arity >= 2");
  }
}

}  // namespace

std::vector<FormulaRef> gamma0_sentences(const Signature& sig,
                                         const std::string& q,
                                         const std::string& r) {
  check_q_r(sig, q, r);
  int q_arity = sig.arity(q);
  int r_arity = sig.arity(r);
  std::vector<FormulaRef> out;

  // Q holds only on constant tuples.
  {
    std::vector<std::string> xs;
    for (int i = 0; i < q_arity; ++i) xs.push_back(var_name(i));
    std::vector<FormulaRef> eqs;
    for (int i = 1; i < q_arity; ++i) {
      eqs.push_back(Formula::equal(xs[0], xs[i]));
    }
    if (eqs.empty()) eqs.push_back(Formula::equal(xs[0], xs[0]));
    FormulaRef body = Formula::implication(
        Formula::atom(q, xs), Formula::conjunction_of(std::move(eqs)));
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
      body = Formula::forall(*it, std::move(body));
    }
    out.push_back(std::move(body));
  }

  // Tagged and untagged elements are never adjacent.
  {
    VarGen vars;
    std::string x = vars.fresh(), y = vars.fresh();
    out.push_back(Formula::forall(
        x, Formula::forall(
               y, Formula::implication(
                      Formula::conjunction(tagged(q, q_arity, x),
                                           not_tagged(q, q_arity, y)),
                      Formula::negation(adjacency(sig, x, y, vars))))));
  }

  // The untagged part is an R-graph: every other relation is empty there...
  for (const auto& [name, arity] : sig.symbols()) {
    if (name == r) continue;
    VarGen vars;
    std::vector<std::string> zs;
    for (int i = 0; i < arity; ++i) zs.push_back(vars.fresh());
    std::vector<FormulaRef> guards;
    for (const std::string& z : zs) guards.push_back(not_tagged(q, q_arity, z));
    FormulaRef body = Formula::implication(
        Formula::conjunction_of(std::move(guards)),
        Formula::negation(Formula::atom(name, zs)));
    for (auto it = zs.rbegin(); it != zs.rend(); ++it) {
      body = Formula::forall(*it, std::move(body));
    }
    out.push_back(std::move(body));
  }

  // ...and R-tuples there follow the R-graph shape, swap included.
  {
    VarGen vars;
    std::vector<std::string> zs;
    for (int i = 0; i < r_arity; ++i) zs.push_back(vars.fresh());
    std::vector<FormulaRef> guards;
    for (const std::string& z : zs) guards.push_back(not_tagged(q, q_arity, z));
    guards.push_back(Formula::atom(r, zs));
    std::vector<FormulaRef> shape;
    shape.push_back(Formula::negation(Formula::equal(zs[0], zs[1])));
    for (int i = 2; i < r_arity; ++i) {
      shape.push_back(Formula::equal(zs[1], zs[i]));
    }
    std::vector<std::string> swapped(r_arity, zs[0]);
    swapped[0] = zs[1];
    shape.push_back(Formula::atom(r, std::move(swapped)));
    FormulaRef body = Formula::implication(
        Formula::conjunction_of(std::move(guards)),
        Formula::conjunction_of(std::move(shape)));
    for (auto it = zs.rbegin(); it != zs.rend(); ++it) {
      body = Formula::forall(*it, std::move(body));
    }
    out.push_back(std::move(body));
  }

  return out;
}

Gamma1mSentences gamma1m_grouped(const Signature& sig, const std::string& q,
                                 const std::string& r, int m) {
  check_q_r(sig, q, r);
  if (m < 3) throw InputError("gamma1m: m must be >= 3");
  int q_arity = sig.arity(q);
  Gamma1mSentences out;

  // No simple cycle on c untagged elements, 3 <= c <= m-1. (A closed walk
  // counted with its repeated endpoint visits one element fewer, so level m
  // forbids the sizes up to m-1 and the smallest case is vacuous.) Nested
  // so failing adjacency prunes the deeper levels.
  for (int c = 3; c <= m - 1; ++c) {
    VarGen vars;
    std::vector<std::string> vs;
    for (int i = 0; i < c; ++i) vs.push_back(vars.fresh());
    FormulaRef body = adjacency(sig, vs[c - 1], vs[0], vars);
    for (int i = c - 1; i >= 0; --i) {
      std::vector<FormulaRef> guards;
      guards.push_back(not_tagged(q, q_arity, vs[i]));
      if (i > 0) guards.push_back(adjacency(sig, vs[i - 1], vs[i], vars));
      for (int j = 0; j < i; ++j) {
        guards.push_back(Formula::negation(Formula::equal(vs[i], vs[j])));
      }
      guards.push_back(std::move(body));
      body = Formula::exists(vs[i], Formula::conjunction_of(std::move(guards)));
    }
    out.no_short_cycles.push_back(Formula::negation(std::move(body)));
  }

  // Every untagged element has exactly 4 or exactly 5 untagged neighbors.
  {
    VarGen vars;
    std::string x = vars.fresh();
    FormulaRef deg4 = degree_exactly(sig, q, q_arity, x, 4, vars);
    FormulaRef deg5 = degree_exactly(sig, q, q_arity, x, 5, vars);
    out.degrees_45.push_back(Formula::forall(
        x, Formula::implication(
               not_tagged(q, q_arity, x),
               Formula::disjunction(std::move(deg4), std::move(deg5)))));
  }

  // At least m untagged elements of untagged-degree exactly 4.
  {
    VarGen vars;
    std::vector<std::string> xs;
    for (int i = 0; i < m; ++i) xs.push_back(vars.fresh());
    std::vector<FormulaRef> degree_checks;
    for (const std::string& x : xs) {
      degree_checks.push_back(degree_exactly(sig, q, q_arity, x, 4, vars));
    }
    FormulaRef body;
    for (int i = m - 1; i >= 0; --i) {
      std::vector<FormulaRef> guards;
      guards.push_back(not_tagged(q, q_arity, xs[i]));
      for (int j = 0; j < i; ++j) {
        guards.push_back(Formula::negation(Formula::equal(xs[i], xs[j])));
      }
      guards.push_back(degree_checks[i]);
      if (body) guards.push_back(std::move(body));
      body = Formula::exists(xs[i], Formula::conjunction_of(std::move(guards)));
    }
    out.enough_degree4.push_back(std::move(body));
  }

  // No path on k distinct untagged elements, k <= m, joining two distinct
  // degree-4 elements. Nested along the path so the search walks edges.
  for (int k = 2; k <= m; ++k) {
    VarGen vars;
    std::vector<std::string> ws;
    for (int i = 0; i < k; ++i) ws.push_back(vars.fresh());
    FormulaRef first_deg = degree_exactly(sig, q, q_arity, ws.front(), 4, vars);
    FormulaRef last_deg = degree_exactly(sig, q, q_arity, ws.back(), 4, vars);
    FormulaRef body = std::move(last_deg);
    for (int i = k - 1; i >= 0; --i) {
      std::vector<FormulaRef> guards;
      guards.push_back(not_tagged(q, q_arity, ws[i]));
      if (i > 0) guards.push_back(adjacency(sig, ws[i - 1], ws[i], vars));
      for (int j = 0; j < i; ++j) {
        guards.push_back(Formula::negation(Formula::equal(ws[i], ws[j])));
      }
      if (i == 0) guards.push_back(first_deg);
      guards.push_back(std::move(body));
      body = Formula::exists(ws[i], Formula::conjunction_of(std::move(guards)));
    }
    out.degree4_far_apart.push_back(Formula::negation(std::move(body)));
  }

  return out;
}

std::vector<FormulaRef> Gamma1mSentences::all() const {
  std::vector<FormulaRef> out;
  out.insert(out.end(), no_short_cycles.begin(), no_short_cycles.end());
  out.insert(out.end(), degrees_45.begin(), degrees_45.end());
  out.insert(out.end(), enough_degree4.begin(), enough_degree4.end());
  out.insert(out.end(), degree4_far_apart.begin(), degree4_far_apart.end());
  return out;
}

std::vector<FormulaRef> gamma1m_sentences(const Signature& sig,
                                          const std::string& q,
                                          const std::string& r, int m) {
  return gamma1m_grouped(sig, q, r, m).all();
}

// --- canonical sentence pool ------------------------------------------------------

namespace {

class PoolEnumerator {
 public:
  PoolEnumerator(const Signature& sig, const PoolOptions& opts)
      : sig_(sig), opts_(opts) {}

  std::vector<FormulaRef> run() {
    std::vector<FormulaRef> pool;
    std::set<std::string> seen;
    for (int size = 1;
         size <= opts_.max_size && pool.size() < opts_.limit; ++size) {
      for (const FormulaRef& f : generate(size, 0, opts_.max_rank)) {
        if (pool.size() >= opts_.limit) break;
        if (seen.insert(print_formula(f)).second) pool.push_back(f);
      }
    }
    return pool;
  }

 private:
  // Each per-(size, depth, rank) list is capped; the enumeration order is
  // fixed, so the pool is a deterministic prefix of the full enumeration.
  static constexpr std::size_t kListCap = 512;

  const std::vector<FormulaRef>& generate(int size, int depth, int rank) {
    auto key = std::make_tuple(size, depth, rank);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<FormulaRef> out;
    auto push = [&out](FormulaRef f) {
      if (out.size() < kListCap) out.push_back(std::move(f));
      return out.size() < kListCap;
    };

    if (size == 1) {
      for (int i = 0; i < depth; ++i) {
        for (int j = 0; j < depth; ++j) {
          push(Formula::equal(var_name(i), var_name(j)));
        }
      }
      for (const auto& [name, arity] : sig_.symbols()) {
        if (depth == 0) continue;
        std::vector<int> idx(arity, 0);
        while (true) {
          std::vector<std::string> args;
          for (int v : idx) args.push_back(var_name(v));
          push(Formula::atom(name, std::move(args)));
          int pos = arity - 1;
          while (pos >= 0 && ++idx[pos] == depth) idx[pos--] = 0;
          if (pos < 0) break;
        }
      }
    } else if (size > 1) {
      bool room = true;
      for (const FormulaRef& f : generate(size - 1, depth, rank)) {
        if (!(room = push(Formula::negation(f)))) break;
      }
      for (FormulaKind kind : {FormulaKind::And, FormulaKind::Or,
                               FormulaKind::Implies, FormulaKind::Iff}) {
        if (!room) break;
        for (int lsize = 1; room && lsize <= size - 2; ++lsize) {
          for (const FormulaRef& l : generate(lsize, depth, rank)) {
            if (!room) break;
            for (const FormulaRef& r : generate(size - 1 - lsize, depth, rank)) {
              FormulaRef node = kind == FormulaKind::And
                                    ? Formula::conjunction(l, r)
                                : kind == FormulaKind::Or
                                    ? Formula::disjunction(l, r)
                                : kind == FormulaKind::Implies
                                    ? Formula::implication(l, r)
                                    : Formula::equivalence(l, r);
              if (!(room = push(std::move(node)))) break;
            }
          }
        }
      }
      if (rank > 0) {
        for (FormulaKind kind : {FormulaKind::Exists, FormulaKind::Forall}) {
          if (!room) break;
          for (const FormulaRef& body : generate(size - 1, depth + 1, rank - 1)) {
            FormulaRef node = kind == FormulaKind::Exists
                                  ? Formula::exists(var_name(depth), body)
                                  : Formula::forall(var_name(depth), body);
            if (!(room = push(std::move(node)))) break;
          }
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const Signature& sig_;
  PoolOptions opts_;
  std::map<std::tuple<int, int, int>, std::vector<FormulaRef>> memo_;
};

}  // namespace

std::vector<FormulaRef> sentence_pool(const Signature& sig,
                                      const PoolOptions& opts) {
  if (opts.max_rank < 1) throw InputError("sentence_pool: rank must be >= 1");
  if (opts.max_size < 1) throw InputError("sentence_pool: size must be >= 1");
  return PoolEnumerator(sig, opts).run();
}

std::vector<FormulaRef> th_m_q(const Structure& s, const std::string& q,
                               const PoolOptions& opts) {
  if (!s.signature().has(q)) {
    throw InputError("th_m_q: " + q + " not in signature");
  }
  if (!s.relation(q).empty()) {
    throw InputError("th_m_q: relation " + q + " must be empty");
  }
  std::vector<FormulaRef> out;
  for (const FormulaRef& f : sentence_pool(s.signature().without(q), opts)) {
    if (evaluate(s, f)) {
      out.push_back(relativize_q(f, s.signature(), q));
    }
  }
  return out;
}

}  // namespace fmlab
