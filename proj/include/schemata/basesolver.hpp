#pragma once

#include <map>

#include "schemata/core_ops.hpp"

namespace schemata {

/// Literals are 1-based variable indices, negative for negated.
using Lit = int;
using Clause = std::vector<Lit>;

/// Plain DPLL with unit propagation; branches on the lowest-index
/// unassigned variable, true first. Returns a total model over the
/// mentioned variables, or nullopt.
std::optional<std::map<int, bool>> dpll(const std::vector<Clause>& clauses);

/// Base formulae of an irreducible open leaf, plus parameter disequations.
struct BaseProblem {
  std::vector<FormulaPtr> formulas;
};

struct SolverResult {
  enum class Kind { Sat, Unsat, Unsupported } kind;
  std::map<std::string, bool> model;  // abstracted atom -> truth value
  std::string reason;                 // Unsupported: the offending formula

  static SolverResult sat(std::map<std::string, bool> m) {
    return {Kind::Sat, std::move(m), {}};
  }
  static SolverResult unsat() { return {Kind::Unsat, {}, {}}; }
  static SolverResult unsupported(std::string why) {
    return {Kind::Unsupported, {}, std::move(why)};
  }
};

class BaseSolver {
 public:
  virtual ~BaseSolver() = default;
  virtual SolverResult solve(const BaseProblem& problem) = 0;
};

/// The free-interpretation backend: distinct parameters denote distinct
/// values, so syntactically distinct atoms are independent propositional
/// variables. Parameter disequations between distinct parameters hold
/// vacuously. Quantifiers and non-parameter equation atoms are rejected.
class BuiltinSolver : public BaseSolver {
 public:
  SolverResult solve(const BaseProblem& problem) override;
};

SolverResult solve_base(const BaseProblem& problem);

/// Serializes the problem (one formula per line, problem-file syntax) to a
/// temp file and runs `command <file>`; expects sat/unsat/unknown on the
/// first output line.
class BridgeSolver : public BaseSolver {
 public:
  explicit BridgeSolver(std::string command) : command_(std::move(command)) {}
  SolverResult solve(const BaseProblem& problem) override;

 private:
  std::string command_;
};

/// Satisfiability-preserving clausification of an abstracted NNF
/// propositional formula (Tseitin-style on shared subformulas); used by
/// solve_base, exposed for tests.
struct Clausifier {
  std::map<std::string, int> atom_vars;  // original atoms only
  int next_var = 1;
  std::vector<Clause> clauses;

  int atom(const std::string& key);
  int aux() { return next_var++; }
};

}  // namespace schemata
