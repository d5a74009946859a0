#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fmlab/formula.hpp"
#include "fmlab/structures.hpp"

namespace fmlab {

// Parses one formula in the ASCII grammar:
//
//   forall x ..., exists x ..., !, &, |, ->, <->, x = y, P, Name(x,y,...)
//
// Precedence ! > & > | > -> > <->; -> and <-> associate to the right, & and
// | to the left; a quantifier binds the shortest formula to its right, so
// binary-connective bodies need parentheses. Variables match
// [a-z][a-z0-9_]*, relation symbols [A-Z][A-Za-z0-9_]*. A bare `P` is the
// extra atomic sentence; atoms are arity-checked against the signature.
// Throws ParseError (with position) or InputError.
FormulaRef parse_formula(const std::string& text, const Signature& sig);

// One sentence per line; '#' starts a comment, blank lines are skipped.
std::vector<FormulaRef> parse_formula_lines(std::istream& in,
                                            const Signature& sig);

}  // namespace fmlab
