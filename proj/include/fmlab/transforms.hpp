#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fmlab/formula.hpp"
#include "fmlab/structures.hpp"

namespace fmlab {

// Relativization to Q: every `forall x body` becomes
// `forall x (Q(x,...,x) -> body)` and every `exists x body` becomes
// `exists x (Q(x,...,x) & body)`, with x repeated to Q's arity. The input
// must not mention q.
FormulaRef relativize_q(const Formula& f, const Signature& sig,
                        const std::string& q);
inline FormulaRef relativize_q(const FormulaRef& f, const Signature& sig,
                               const std::string& q) {
  return relativize_q(*f, sig, q);
}

// P-elimination: replaces the atom P by `forall x (x = x)` and copies
// everything else structurally. P-free subtrees are returned unchanged.
FormulaRef prime_transform(const FormulaRef& f);

// Same with P replaced by `!forall x (x = x)`.
FormulaRef double_prime_transform(const FormulaRef& f);

// The Q-tag discipline: Q holds only on constant tuples, tagged and
// untagged elements are never adjacent, and the untagged part is an
// R-graph. Adjacency and the R-graph axioms are expanded over the finite
// signature.
std::vector<FormulaRef> gamma0_sentences(const Signature& sig,
                                         const std::string& q,
                                         const std::string& r);

// The level-m fragment over the untagged part: no short cycles, degrees
// exactly 4 or 5, at least m elements of degree 4, and no short path
// joining two distinct degree-4 elements.
struct Gamma1mSentences {
  std::vector<FormulaRef> no_short_cycles;    // one per forbidden cycle size
  std::vector<FormulaRef> degrees_45;
  std::vector<FormulaRef> enough_degree4;
  std::vector<FormulaRef> degree4_far_apart;  // one per path length 2..m
  std::vector<FormulaRef> all() const;
};

Gamma1mSentences gamma1m_grouped(const Signature& sig, const std::string& q,
                                 const std::string& r, int m);
std::vector<FormulaRef> gamma1m_sentences(const Signature& sig,
                                          const std::string& q,
                                          const std::string& r, int m);

// Canonical finite sentence pool: all sentences over the signature up to
// the given quantifier rank and node budget, enumerated smallest-first in a
// fixed order and truncated at `limit`. Bound variables are named x, y, z,
// u, w, v6, ... by quantifier depth.
struct PoolOptions {
  int max_rank = 3;
  int max_size = 6;        // AST node budget per sentence
  std::size_t limit = 200; // pool cap
};

std::vector<FormulaRef> sentence_pool(const Signature& sig,
                                      const PoolOptions& opts);

// The finite stand-in for Th(M)_Q: relativizations of the pool sentences
// over sigma\{Q} that hold in s. Q must be empty in s.
std::vector<FormulaRef> th_m_q(const Structure& s, const std::string& q,
                               const PoolOptions& opts = {});

}  // namespace fmlab
