#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schemata/term.hpp"

namespace schemata {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind : uint8_t {
  True,
  False,
  BaseLit,     // possibly negated base atom: predicate application or
               // equation between non-inductive, non-parameter-pair terms
  Eq,          // oriented equation over inductive terms or a parameter pair
  Diseq,       // disequation; parameter pairs are kept side-sorted
  DefinedLit,  // d_t or its negation
  DepthAtom,   // depth(A) rel rhs, rhs a nat term
  And,
  Or,
  Quantified,
  Not,      // pre-NNF only
  Implies,  // pre-NNF only
};

enum class DepthRel : uint8_t { EqR, Lt, Le };

/// Immutable NNF formula node. `Not`/`Implies` appear only in freshly
/// parsed input and are removed by nnf(). And/Or children are flattened,
/// sorted and deduplicated so structural equality is set equality.
class Formula {
 public:
  FKind kind;
  bool positive = true;  // BaseLit, DefinedLit

  TermPtr lhs, rhs;  // BaseLit (rhs null for predicate atoms), Eq, Diseq,
                     // DepthAtom (lhs = parameter term, rhs = nat term)

  SymbolId defsym = -1;  // DefinedLit
  std::string defname;
  TermPtr index;

  DepthRel rel = DepthRel::EqR;  // DepthAtom

  std::vector<FormulaPtr> children;  // And, Or; Not uses children[0],
                                     // Implies children[0..1]

  bool universal = false;  // Quantified
  std::string qvar;
  SortId qsort = -1;
  std::string qsort_name;
  FormulaPtr body;

 private:
  Formula() = default;
  friend struct FormulaFactory;
};

int compare(const Formula& a, const Formula& b);
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

FormulaPtr f_true();
FormulaPtr f_false();

/// Predicate-application literal; `atom` must have sort bool.
FormulaPtr f_baselit(bool positive, TermPtr atom);
/// Base equation literal between non-inductive terms.
FormulaPtr f_base_eq(bool positive, TermPtr l, TermPtr r);

/// t ≐ t between identical terms simplifies to ⊤; orientation is kept.
FormulaPtr f_eq(TermPtr l, TermPtr r);
/// t ≠ t simplifies to ⊥; parameter pairs are stored side-sorted.
FormulaPtr f_diseq(TermPtr l, TermPtr r);

FormulaPtr f_defined(bool positive, const Signature& sig, SymbolId d, TermPtr index);

/// depth(param) rel rhs; a literal-0 right-hand side collapses to ⊥
/// (inductive terms have depth at least 1).
FormulaPtr f_depth(TermPtr param, DepthRel rel, TermPtr rhs);

FormulaPtr f_and(std::vector<FormulaPtr> children);
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_quant(bool universal, std::string var, SortId sort,
                   const std::string& sort_name, FormulaPtr body);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);

/// Flips the polarity of a BaseLit or DefinedLit node.
FormulaPtr flip_literal(const FormulaPtr& f);

bool is_true(const FormulaPtr& f);
bool is_false(const FormulaPtr& f);

}  // namespace schemata
