#include "schemata/rewrite.hpp"

#include <algorithm>

namespace schemata {

void RewriteSystem::add_rule(RewriteRule r) {
  auto key = std::make_pair(r.defined, r.constructor);
  if (index_.count(key)) throw Error("duplicate rewrite rule");
  index_.emplace(key, rules_.size());
  rules_.push_back(std::move(r));
}

const RewriteRule* RewriteSystem::find(SymbolId defined, SymbolId constructor) const {
  auto it = index_.find({defined, constructor});
  return it == index_.end() ? nullptr : &rules_[it->second];
}

std::vector<SymbolId> RewriteSystem::defined_symbols() const {
  std::vector<SymbolId> out;
  for (const auto& r : rules_)
    if (out.empty() || out.back() != r.defined) {
      if (std::find(out.begin(), out.end(), r.defined) == out.end())
        out.push_back(r.defined);
    }
  return out;
}

// Replaces every defined atom indexed by the full pattern f(formals) with
// the (recursively normalized) body of the corresponding rule; negative
// occurrences take the NNF of the negation.
FormulaPtr Rewriter::rewrite_pattern_atoms(const FormulaPtr& body, SymbolId f,
                                           const TermPtr& pattern) const {
  switch (body->kind) {
    case FKind::DefinedLit: {
      if (!equal(body->index, pattern)) return body;
      FormulaPtr inner = normalized_body(body->defsym, f);
      return body->positive ? inner : nnf(f_not(inner));
    }
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> cs;
      cs.reserve(body->children.size());
      for (const auto& c : body->children)
        cs.push_back(rewrite_pattern_atoms(c, f, pattern));
      return body->kind == FKind::And ? f_and(std::move(cs)) : f_or(std::move(cs));
    }
    case FKind::Quantified:
      return f_quant(body->universal, body->qvar, body->qsort, body->qsort_name,
                     rewrite_pattern_atoms(body->body, f, pattern));
    default:
      return body;
  }
}

FormulaPtr Rewriter::normalized_body(SymbolId d, SymbolId f) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find({d, f});
    if (it != memo_.end()) return it->second;
  }
  const RewriteRule* rule = system_.find(d, f);
  if (!rule)
    throw Error("missing rewrite rule for " + sig_.symbol(d).name + " at " +
                sig_.symbol(f).name);
  TermPtr pattern = Term::app(sig_, f, rule->formals);
  FormulaPtr result = rewrite_pattern_atoms(rule->body, f, pattern);
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(std::make_pair(d, f), result);
  return result;
}

FormulaPtr Rewriter::normal_form(SymbolId d, SymbolId f,
                                 const std::vector<TermPtr>& args) const {
  const RewriteRule* rule = system_.find(d, f);
  if (!rule)
    throw Error("missing rewrite rule for " + sig_.symbol(d).name + " at " +
                sig_.symbol(f).name);
  if (args.size() != rule->formals.size())
    throw Error("normal_form argument count mismatch");
  std::map<std::string, TermPtr> sub;
  for (size_t i = 0; i < args.size(); ++i)
    sub[rule->formals[i]->var_name] = args[i];
  return substitute_vars(sig_, normalized_body(d, f), sub);
}

FormulaPtr Rewriter::unfold(SymbolId d, const TermPtr& target, SymbolId f,
                            const std::vector<TermPtr>& args, bool positive) const {
  TermPtr pattern = Term::app(sig_, f, args);
  FormulaPtr psi = replace_term(sig_, normal_form(d, f, args), pattern, target);
  return positive ? psi : nnf(f_not(psi));
}

FormulaPtr Rewriter::ground_unfold_atom(SymbolId d, const TermPtr& t) const {
  if (t->has_var || !t->is_constructor_app())
    throw Error("ground_unfold_atom needs a ground constructor term, got " +
                to_string(t));
  FormulaPtr body = normal_form(d, t->sym, t->args);
  // Remaining defined atoms are indexed by strict subterms of t.
  std::function<FormulaPtr(const FormulaPtr&)> expand =
      [&](const FormulaPtr& f) -> FormulaPtr {
    switch (f->kind) {
      case FKind::DefinedLit: {
        FormulaPtr inner = ground_unfold_atom(f->defsym, f->index);
        return f->positive ? inner : nnf(f_not(inner));
      }
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaPtr> cs;
        for (const auto& c : f->children) cs.push_back(expand(c));
        return f->kind == FKind::And ? f_and(std::move(cs)) : f_or(std::move(cs));
      }
      case FKind::Quantified:
        return f_quant(f->universal, f->qvar, f->qsort, f->qsort_name,
                       expand(f->body));
      default:
        return f;
    }
  };
  return expand(body);
}

}  // namespace schemata
