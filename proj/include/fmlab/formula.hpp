#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fmlab {

enum class FormulaKind {
  Atom,     // R(x1,...,xk)
  Equal,    // x = y
  PAtom,    // the extra nullary atomic sentence P
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

// Immutable FO syntax tree node. Subtrees are freely shared; the evaluator's
// memo table keys on node identity, so sharing a subformula also shares its
// cached truth values.
class Formula {
 public:
  FormulaKind kind;
  std::string symbol;             // Atom: relation name; quantifier: variable
  std::vector<std::string> args;  // Atom arguments; Equal: {lhs, rhs}
  FormulaRef left;                // first child (Not and quantifiers use only this)
  FormulaRef right;               // second child of binary connectives

  static FormulaRef atom(std::string symbol, std::vector<std::string> vars);
  static FormulaRef equal(std::string lhs, std::string rhs);
  static FormulaRef p_atom();
  static FormulaRef negation(FormulaRef f);
  static FormulaRef conjunction(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef disjunction(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef implication(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef equivalence(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef exists(std::string var, FormulaRef body);
  static FormulaRef forall(std::string var, FormulaRef body);

  // Folds a nonempty list with a binary connective, left-associated.
  static FormulaRef conjunction_of(std::vector<FormulaRef> parts);
  static FormulaRef disjunction_of(std::vector<FormulaRef> parts);
};

bool structurally_equal(const Formula& a, const Formula& b);
std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);
bool contains_p_atom(const Formula& f);
bool mentions_symbol(const Formula& f, const std::string& symbol);
int quantifier_rank(const Formula& f);

// Canonical ASCII form: binary connectives are always parenthesized, so
// parse(print(f)) reproduces f exactly and printing is idempotent under
// reparsing.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaRef& f) {
  return print_formula(*f);
}

}  // namespace fmlab
