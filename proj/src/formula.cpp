#include "fmlab/formula.hpp"

#include <algorithm>
#include <utility>

#include "fmlab/errors.hpp"

namespace fmlab {

namespace {

FormulaRef make(FormulaKind kind, std::string symbol,
                std::vector<std::string> args, FormulaRef left,
                FormulaRef right) {
  auto node = std::make_shared<Formula>();
  node->kind = kind;
  node->symbol = std::move(symbol);
  node->args = std::move(args);
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

}  // namespace

FormulaRef Formula::atom(std::string symbol, std::vector<std::string> vars) {
  if (vars.empty()) throw InputError("atom " + symbol + " needs arguments");
  return make(FormulaKind::Atom, std::move(symbol), std::move(vars), nullptr,
              nullptr);
}

FormulaRef Formula::equal(std::string lhs, std::string rhs) {
  return make(FormulaKind::Equal, "", {std::move(lhs), std::move(rhs)},
              nullptr, nullptr);
}

FormulaRef Formula::p_atom() {
  return make(FormulaKind::PAtom, "", {}, nullptr, nullptr);
}

FormulaRef Formula::negation(FormulaRef f) {
  return make(FormulaKind::Not, "", {}, std::move(f), nullptr);
}

FormulaRef Formula::conjunction(FormulaRef lhs, FormulaRef rhs) {
  return make(FormulaKind::And, "", {}, std::move(lhs), std::move(rhs));
}

FormulaRef Formula::disjunction(FormulaRef lhs, FormulaRef rhs) {
  return make(FormulaKind::Or, "", {}, std::move(lhs), std::move(rhs));
}

FormulaRef Formula::implication(FormulaRef lhs, FormulaRef rhs) {
  return make(FormulaKind::Implies, "", {}, std::move(lhs), std::move(rhs));
}

FormulaRef Formula::equivalence(FormulaRef lhs, FormulaRef rhs) {
  return make(FormulaKind::Iff, "", {}, std::move(lhs), std::move(rhs));
}

FormulaRef Formula::exists(std::string var, FormulaRef body) {
  return make(FormulaKind::Exists, std::move(var), {}, std::move(body),
              nullptr);
}

FormulaRef Formula::forall(std::string var, FormulaRef body) {
  return make(FormulaKind::Forall, std::move(var), {}, std::move(body),
              nullptr);
}

FormulaRef Formula::conjunction_of(std::vector<FormulaRef> parts) {
  if (parts.empty()) throw InputError("conjunction_of: empty list");
  FormulaRef acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = conjunction(acc, parts[i]);
  }
  return acc;
}

FormulaRef Formula::disjunction_of(std::vector<FormulaRef> parts) {
  if (parts.empty()) throw InputError("disjunction_of: empty list");
  FormulaRef acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = disjunction(acc, parts[i]);
  }
  return acc;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.symbol != b.symbol || a.args != b.args) {
    return false;
  }
  if ((a.left == nullptr) != (b.left == nullptr)) return false;
  if ((a.right == nullptr) != (b.right == nullptr)) return false;
  if (a.left && !structurally_equal(*a.left, *b.left)) return false;
  if (a.right && !structurally_equal(*a.right, *b.right)) return false;
  return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& free) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (const std::string& v : f.args) {
        if (!bound.count(v)) free.insert(v);
      }
      return;
    case FormulaKind::PAtom:
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool was_bound = bound.count(f.symbol) > 0;
      bound.insert(f.symbol);
      collect_free(*f.left, bound, free);
      if (!was_bound) bound.erase(f.symbol);
      return;
    }
    default:
      if (f.left) collect_free(*f.left, bound, free);
      if (f.right) collect_free(*f.right, bound, free);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, free;
  collect_free(f, bound, free);
  return free;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool contains_p_atom(const Formula& f) {
  if (f.kind == FormulaKind::PAtom) return true;
  if (f.left && contains_p_atom(*f.left)) return true;
  if (f.right && contains_p_atom(*f.right)) return true;
  return false;
}

bool mentions_symbol(const Formula& f, const std::string& symbol) {
  if (f.kind == FormulaKind::Atom && f.symbol == symbol) return true;
  if (f.left && mentions_symbol(*f.left, symbol)) return true;
  if (f.right && mentions_symbol(*f.right, symbol)) return true;
  return false;
}

int quantifier_rank(const Formula& f) {
  int child = 0;
  if (f.left) child = quantifier_rank(*f.left);
  if (f.right) child = std::max(child, quantifier_rank(*f.right));
  if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) {
    return child + 1;
  }
  return child;
}

namespace {

void print_into(const Formula& f, std::string& out);

// Operands of `!` keep their own parentheses except for equalities, which
// would otherwise rebind ("!x = y" is not parseable as !(x = y)).
void print_not_operand(const Formula& f, std::string& out) {
  if (f.kind == FormulaKind::Equal) {
    out += '(';
    print_into(f, out);
    out += ')';
  } else {
    print_into(f, out);
  }
}

// Quantifier bodies: binary connectives carry their own parentheses, bare
// equalities get wrapped so `forall x (x = x)` round-trips.
void print_body(const Formula& f, std::string& out) {
  if (f.kind == FormulaKind::Equal) {
    out += '(';
    print_into(f, out);
    out += ')';
  } else {
    print_into(f, out);
  }
}

void print_into(const Formula& f, std::string& out) {
  switch (f.kind) {
    case FormulaKind::Atom:
      out += f.symbol;
      out += '(';
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ',';
        out += f.args[i];
      }
      out += ')';
      return;
    case FormulaKind::Equal:
      out += f.args[0];
      out += " = ";
      out += f.args[1];
      return;
    case FormulaKind::PAtom:
      out += 'P';
      return;
    case FormulaKind::Not:
      out += '!';
      print_not_operand(*f.left, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      const char* op = f.kind == FormulaKind::And       ? " & "
                       : f.kind == FormulaKind::Or      ? " | "
                       : f.kind == FormulaKind::Implies ? " -> "
                                                        : " <-> ";
      out += '(';
      print_into(*f.left, out);
      out += op;
      print_into(*f.right, out);
      out += ')';
      return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind == FormulaKind::Exists ? "exists " : "forall ";
      out += f.symbol;
      out += ' ';
      print_body(*f.left, out);
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace fmlab
