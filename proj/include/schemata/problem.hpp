#pragma once

#include "schemata/delta.hpp"
#include "schemata/rewrite.hpp"
#include "schemata/validate.hpp"

namespace schemata {

struct ParseError : Error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

/// A parsed problem: vocabulary, rewrite rules, decomposition table and
/// the conjecture (the conjunction of all asserts, in NNF).
struct Problem {
  Signature sig;
  RewriteSystem rules;
  DeltaTable delta;
  FormulaPtr conjecture;
};

/// Grammar (S-expressions, `;` comments):
///   (sort NAME [:inductive])
///   (constructor NAME (SORT*) SORT)
///   (function NAME (SORT*) SORT)        ; result sort bool = predicate
///   (parameter NAME SORT)
///   (defined NAME SORT)
///   (rule (DEF PATTERN) FORMULA)        ; PATTERN = CONSTR | (CONSTR VAR*)
///   (delta (F G) FORMULA)               ; over x1..xn, y1..ym
///   (assert FORMULA)
/// Formulae: true, false, (and ...), (or ...), (not F), (=> F G),
/// (= t s), (/= t s), (forall (x SORT) F), (exists (x SORT) F),
/// (p t ...) applications, (d t) defined atoms.
/// nat with 0/s and the sort bool are predeclared.
Problem parse_problem(const std::string& text);

/// Canonical rendering; parse ∘ print is the identity on its output.
std::string print_problem(const Problem& problem);

/// All static checks: signature, rewrite system, rule bodies, delta
/// table, conjecture; `builtin_backend` adds the backend capability scan.
ValidationReport validate_problem(const Problem& problem, bool builtin_backend);

}  // namespace schemata
