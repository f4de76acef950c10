#pragma once

#include "schemata/delta.hpp"
#include "schemata/rewrite.hpp"

namespace schemata {

/// The termination measure: weight multiset of the formulae that are not
/// parameter (dis)equations, then separable / diseq / unsolved counts,
/// compared lexicographically with the multiset component under the
/// standard multiset extension.
struct Measure {
  std::vector<long> weights;  // sorted descending
  long separable = 0;
  long diseq = 0;
  long unsolved = 0;

  // <0, 0, >0 like compare(); the multiset extension over naturals is
  // lexicographic comparison of the descending-sorted sequences.
  int cmp(const Measure& other) const;
  bool operator<(const Measure& other) const { return cmp(other) < 0; }
  std::string str() const;
};

class MeasureCalc {
 public:
  MeasureCalc(const Rewriter& rw, const DeltaTable& delta_table)
      : rw_(rw), delta_(delta_table), arity_(rw.signature().max_arity()) {}

  /// weight(): parameters count 1, s(t) counts 3+a+weight(t), depth is
  /// transparent, ≐/< add 1, ≤ adds 2, defined atoms take 1 plus the
  /// heaviest constructor body with nested defined atoms weighted 2.
  long weight(const FormulaPtr& f) const;
  long weight(const TermPtr& t) const;

  Measure measure(const NodeLabel& label, ParamId n_param) const;

 private:
  long defined_weight(SymbolId d) const;
  // Term weight with occurrences of `pattern` counting as a parameter.
  long weight_with_placeholder(const TermPtr& t, const TermPtr& pattern) const;

  const Rewriter& rw_;
  const DeltaTable& delta_;
  long arity_;
  mutable std::map<SymbolId, long> defined_memo_;
};

/// A is solved in the label iff its only occurrence is on the left of one
/// equation A ≐ B with B a parameter.
bool is_solved_param(const NodeLabel& label, ParamId p);

}  // namespace schemata
