#pragma once

#include <map>
#include <mutex>

#include "schemata/core_ops.hpp"

namespace schemata {

/// One rule d_{f(x1,...,xn)} -> body, with the formals in constructor
/// profile order.
struct RewriteRule {
  SymbolId defined = -1;
  SymbolId constructor = -1;
  std::vector<TermPtr> formals;  // variables
  FormulaPtr body;               // NNF
};

/// Association from (defined symbol, constructor) to its rule. Total over
/// the constructors of each defined symbol's index sort once validated.
class RewriteSystem {
 public:
  void add_rule(RewriteRule r);
  const RewriteRule* find(SymbolId defined, SymbolId constructor) const;
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::vector<SymbolId> defined_symbols() const;

 private:
  std::vector<RewriteRule> rules_;
  std::map<std::pair<SymbolId, SymbolId>, size_t> index_;
};

/// Unfolding engine. Normal forms per (defined, constructor) are computed
/// once against the rule's own formals and instantiated by substitution;
/// the memo table is guarded for concurrent use.
class Rewriter {
 public:
  Rewriter(const Signature& sig, const RewriteSystem& system)
      : sig_(sig), system_(system) {}

  /// Body of rule (d, f) instantiated with `args`, with every inner
  /// defined atom indexed by the full pattern rewritten away; remaining
  /// defined atoms are indexed by single parameters.
  FormulaPtr normal_form(SymbolId d, SymbolId f, const std::vector<TermPtr>& args) const;

  /// The Unfolding conclusion: normal_form(d, f, args) with the pattern
  /// term f(args) replaced by `target`; negative polarity returns the NNF
  /// of its negation.
  FormulaPtr unfold(SymbolId d, const TermPtr& target, SymbolId f,
                    const std::vector<TermPtr>& args, bool positive) const;

  /// Fully unfolds d_t for a ground constructor term t; the result
  /// contains no defined atoms.
  FormulaPtr ground_unfold_atom(SymbolId d, const TermPtr& t) const;

  const Signature& signature() const { return sig_; }
  const RewriteSystem& system() const { return system_; }

 private:
  FormulaPtr normalized_body(SymbolId d, SymbolId f) const;
  FormulaPtr rewrite_pattern_atoms(const FormulaPtr& body, SymbolId f,
                                   const TermPtr& pattern) const;

  const Signature& sig_;
  const RewriteSystem& system_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<SymbolId, SymbolId>, FormulaPtr> memo_;
};

}  // namespace schemata
