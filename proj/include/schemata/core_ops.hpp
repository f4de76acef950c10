#pragma once

#include <functional>
#include <map>
#include <set>

#include "schemata/formula.hpp"

namespace schemata {

using ParamId = SymbolId;

/// Total map from parameters to parameters of the same sort; identity
/// outside the stored pairs. The distinguished depth parameter must be a
/// fixpoint wherever one exists.
class Renaming {
 public:
  Renaming() = default;

  void set(const Signature& sig, ParamId from, ParamId to);
  ParamId apply(ParamId p) const;
  bool maps(ParamId p) const { return map_.count(p) != 0; }
  const std::map<ParamId, ParamId>& pairs() const { return map_; }
  bool identity() const;

  /// Composition: (a.then(b))(p) = b(a(p)).
  Renaming then(const Renaming& after) const;

 private:
  std::map<ParamId, ParamId> map_;
};

/// Finite set of formulae in canonical form; duplicates collapse, ⊤ is
/// dropped on insertion. A label containing ⊥ is closed.
class NodeLabel {
 public:
  NodeLabel() = default;
  explicit NodeLabel(std::vector<FormulaPtr> fs);

  void insert(FormulaPtr f);
  void erase(const FormulaPtr& f);
  bool contains(const FormulaPtr& f) const;
  bool closed() const;

  size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }
  const std::vector<FormulaPtr>& formulas() const { return formulas_; }

  bool operator==(const NodeLabel& other) const;

 private:
  std::vector<FormulaPtr> formulas_;  // sorted by compare, unique
};

std::string to_string(const NodeLabel& label);

/// Negation normal form; eliminates Not/Implies, flips literals and
/// Eq/Diseq, dualizes And/Or and quantifiers. Total on well-sorted input.
FormulaPtr nnf(const FormulaPtr& f);

/// Rebuilds a formula with every term position mapped through `fn`
/// (applied outermost-first on each term tree).
using TermFn = std::function<TermPtr(const TermPtr&)>;
FormulaPtr map_terms(const Signature& sig, const FormulaPtr& f, const TermFn& fn);

TermPtr replace_term(const TermPtr& t, const TermPtr& pattern, const TermPtr& repl);
FormulaPtr replace_term(const Signature& sig, const FormulaPtr& f,
                        const TermPtr& pattern, const TermPtr& repl);

FormulaPtr substitute_param(const Signature& sig, const FormulaPtr& f, ParamId from,
                            const TermPtr& to);
NodeLabel substitute_param(const Signature& sig, const NodeLabel& label, ParamId from,
                           const TermPtr& to);

/// Substitutes rule formals (variables, keyed by name) by terms.
FormulaPtr substitute_vars(const Signature& sig, const FormulaPtr& f,
                           const std::map<std::string, TermPtr>& sub);

FormulaPtr apply_renaming(const Signature& sig, const Renaming& rho, const FormulaPtr& f);
NodeLabel apply_renaming(const Signature& sig, const Renaming& rho, const NodeLabel& label);

void collect_params(const TermPtr& t, std::set<ParamId>& out);
void collect_params(const FormulaPtr& f, std::set<ParamId>& out);
std::set<ParamId> params_of(const FormulaPtr& f);
std::set<ParamId> params_of(const NodeLabel& label);
bool occurs_param(const FormulaPtr& f, ParamId p);

/// The max(E) ≐ rhs shorthand: ⋀_{t∈E} t ≤ rhs ∧ ⋁_{t∈E} t ≐ rhs, and
/// 0 ≐ rhs for empty E. Elements of E are depth(parameter) terms given by
/// their parameter.
FormulaPtr expand_max(const Signature& sig, std::vector<TermPtr> depth_params,
                      const TermPtr& rhs);

/// Base formulae carry no defined symbols, no depth atoms and no
/// equations or disequations at the schema level (BaseLit equations over
/// non-inductive terms are fine).
bool is_base_formula(const FormulaPtr& f);

}  // namespace schemata
