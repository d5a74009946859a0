#pragma once

#include <map>
#include <string>

#include "fmlab/formula.hpp"
#include "fmlab/structures.hpp"

namespace fmlab {

// Variable bindings for the free variables of a formula.
using Assignment = std::map<std::string, Elem>;

// Tarski semantics over the finite universe of s. The formula must not
// contain the P atom (use evaluate_with_p for that) and every free variable
// must be bound by the assignment. Quantified subformulas with few free
// variables are memoized per call, which keeps the generated degree/path
// sentences of the theory fragments tractable.
bool evaluate(const Structure& s, const Formula& f, const Assignment& a = {});
inline bool evaluate(const Structure& s, const FormulaRef& f,
                     const Assignment& a = {}) {
  return evaluate(s, *f, a);
}

// Tarski semantics for sentences over the logic extended with P, with the P
// atom decided as p_value. Every finite structure satisfies P, so the
// faithful call passes true; the override exists to exercise the other
// branch of the elimination transforms.
bool evaluate_with_p(const Structure& s, const Formula& f, bool p_value);
inline bool evaluate_with_p(const Structure& s, const FormulaRef& f,
                            bool p_value) {
  return evaluate_with_p(s, *f, p_value);
}

}  // namespace fmlab
