#pragma once

#include "schemata/delta.hpp"
#include "schemata/rewrite.hpp"

namespace schemata {

struct Violation {
  std::string condition;  // e.g. "def2-3", "def6-2", "backend"
  std::string location;   // symbol / rule / file position when known
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string condition, std::string location, std::string message) {
    violations.push_back({std::move(condition), std::move(location), std::move(message)});
  }
  std::string summary() const;
};

/// Def. 1 constraints plus the built-in vocabulary: constructors close the
/// inductive sorts, nat/0/s are present, defined symbols are monadic over
/// inductive sorts, parameters are constants.
ValidationReport validate_signature(const Signature& sig);

/// Def. 2 rule conditions: (C1) rule free variables are formals, (C2)
/// inductive terms in bodies are formals or the full pattern, (C3) the
/// head-recursion graph is acyclic, (C4) exactly one rule per (defined,
/// constructor) pair, (C5) the rule format is orthogonal by construction.
ValidationReport validate_rewrite_system(const RewriteSystem& system,
                                         const Signature& sig);

/// Def. 6 conditions on a conjecture: (A2) no constructors and no
/// inductive-sort variables, (A3) atoms outside ∧/∨/defined structure
/// carry no defined symbol and at most one distinct parameter. With
/// `builtin_backend`, additionally flags quantifiers and base atoms the
/// built-in solver cannot digest (condition "backend", reported apart
/// from admissibility).
ValidationReport validate_conjecture(const FormulaPtr& conjecture, const Signature& sig,
                                     bool builtin_backend = false);

/// Rule bodies after pattern abstraction must satisfy the conjecture
/// conditions as well (Def. 6 condition 4); with `builtin_backend` the
/// backend scan covers them too.
ValidationReport validate_rule_bodies(const RewriteSystem& system, const Signature& sig,
                                      bool builtin_backend = false);

/// Def. 3: templates built on ∨/∧/≐ over x1..xn, y1..ym only
/// (condition 1); every DNF branch links each x_i to some y_k and
/// vice versa (condition 2).
ValidationReport validate_delta_table(const DeltaTable& table, const Signature& sig);

}  // namespace schemata
