#pragma once

#include <map>

#include "schemata/core_ops.hpp"

namespace schemata {

/// Per constructor-pair decomposition templates over the distinguished
/// variables x1..xn (left constructor arguments) and y1..ym (right).
/// Lookup is unordered: an entry for (f, g) also serves (g, f) with the
/// variable roles swapped. Pairs without an entry get the free-constructor
/// default.
class DeltaTable {
 public:
  void add(SymbolId f, SymbolId g, FormulaPtr tmpl);
  const FormulaPtr* find(SymbolId f, SymbolId g, bool* swapped) const;
  const std::map<std::pair<SymbolId, SymbolId>, FormulaPtr>& entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<SymbolId, SymbolId>, FormulaPtr> entries_;  // keyed as declared
};

/// Δ(f(s⃗) ≐ g(t⃗)): the table template with x_i ↦ s_i, y_j ↦ t_j, or the
/// free default (⊥ for distinct constructors, componentwise equations
/// otherwise).
FormulaPtr delta(const Signature& sig, const DeltaTable& table, SymbolId f,
                 const std::vector<TermPtr>& s, SymbolId g,
                 const std::vector<TermPtr>& t);

/// NNF(¬Δ(f(s⃗) ≐ g(t⃗))): a positive ∧/∨ combination of disequations.
FormulaPtr negated_delta(const Signature& sig, const DeltaTable& table, SymbolId f,
                         const std::vector<TermPtr>& s, SymbolId g,
                         const std::vector<TermPtr>& t);

/// Equality of ground constructor terms modulo the table: identical heads
/// recurse through the (possibly user-supplied) template, distinct heads
/// through the entry or the ⊥ default.
bool ground_delta_equal(const Signature& sig, const DeltaTable& table,
                        const TermPtr& u, const TermPtr& v);

}  // namespace schemata
