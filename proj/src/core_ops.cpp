#include "schemata/core_ops.hpp"

#include <algorithm>

namespace schemata {

void Renaming::set(const Signature& sig, ParamId from, ParamId to) {
  const auto& a = sig.symbol(from);
  const auto& b = sig.symbol(to);
  if (a.kind != SymbolKind::Parameter || b.kind != SymbolKind::Parameter)
    throw Error("renaming over non-parameters: " + a.name + " -> " + b.name);
  if (a.result != b.result)
    throw Error("renaming across sorts: " + a.name + " -> " + b.name);
  map_[from] = to;
}

ParamId Renaming::apply(ParamId p) const {
  auto it = map_.find(p);
  return it == map_.end() ? p : it->second;
}

bool Renaming::identity() const {
  for (const auto& [k, v] : map_)
    if (k != v) return false;
  return true;
}

Renaming Renaming::then(const Renaming& after) const {
  Renaming out;
  for (const auto& [k, v] : map_) out.map_[k] = after.apply(v);
  for (const auto& [k, v] : after.map_)
    if (!out.map_.count(k)) out.map_[k] = v;
  return out;
}

NodeLabel::NodeLabel(std::vector<FormulaPtr> fs) {
  for (auto& f : fs) insert(std::move(f));
}

static auto label_less = [](const FormulaPtr& a, const FormulaPtr& b) {
  return compare(a, b) < 0;
};

void NodeLabel::insert(FormulaPtr f) {
  if (!f) throw Error("null formula inserted into label");
  if (is_true(f)) return;
  auto it = std::lower_bound(formulas_.begin(), formulas_.end(), f, label_less);
  if (it != formulas_.end() && equal(*it, f)) return;
  formulas_.insert(it, std::move(f));
}

void NodeLabel::erase(const FormulaPtr& f) {
  auto it = std::lower_bound(formulas_.begin(), formulas_.end(), f, label_less);
  if (it != formulas_.end() && equal(*it, f)) formulas_.erase(it);
}

bool NodeLabel::contains(const FormulaPtr& f) const {
  auto it = std::lower_bound(formulas_.begin(), formulas_.end(), f, label_less);
  return it != formulas_.end() && equal(*it, f);
}

bool NodeLabel::closed() const {
  for (const auto& f : formulas_)
    if (is_false(f)) return true;
  return false;
}

bool NodeLabel::operator==(const NodeLabel& other) const {
  if (formulas_.size() != other.formulas_.size()) return false;
  for (size_t i = 0; i < formulas_.size(); ++i)
    if (!equal(formulas_[i], other.formulas_[i])) return false;
  return true;
}

std::string to_string(const NodeLabel& label) {
  std::string s = "{";
  bool first = true;
  for (const auto& f : label) {
    if (!first) s += ", ";
    first = false;
    s += to_string(*f);
  }
  return s + "}";
}

FormulaPtr nnf(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::BaseLit:
    case FKind::Eq:
    case FKind::Diseq:
    case FKind::DefinedLit:
    case FKind::DepthAtom:
      return f;
    case FKind::And: {
      std::vector<FormulaPtr> cs;
      for (const auto& c : f->children) cs.push_back(nnf(c));
      return f_and(std::move(cs));
    }
    case FKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const auto& c : f->children) cs.push_back(nnf(c));
      return f_or(std::move(cs));
    }
    case FKind::Quantified:
      return f_quant(f->universal, f->qvar, f->qsort, f->qsort_name, nnf(f->body));
    case FKind::Implies:
      return f_or({nnf(f_not(f->children[0])), nnf(f->children[1])});
    case FKind::Not: {
      const FormulaPtr& g = f->children[0];
      switch (g->kind) {
        case FKind::True: return f_false();
        case FKind::False: return f_true();
        case FKind::BaseLit: {
          if (g->rhs) return f_base_eq(!g->positive, g->lhs, g->rhs);
          return f_baselit(!g->positive, g->lhs);
        }
        case FKind::Eq: return f_diseq(g->lhs, g->rhs);
        case FKind::Diseq: return f_eq(g->lhs, g->rhs);
        case FKind::DefinedLit:
          return flip_literal(g);
        case FKind::DepthAtom:
          throw Error("cannot negate a depth atom: " + to_string(*g));
        case FKind::And: {
          std::vector<FormulaPtr> cs;
          for (const auto& c : g->children) cs.push_back(nnf(f_not(c)));
          return f_or(std::move(cs));
        }
        case FKind::Or: {
          std::vector<FormulaPtr> cs;
          for (const auto& c : g->children) cs.push_back(nnf(f_not(c)));
          return f_and(std::move(cs));
        }
        case FKind::Quantified:
          return f_quant(!g->universal, g->qvar, g->qsort, g->qsort_name,
                         nnf(f_not(g->body)));
        case FKind::Not:
          return nnf(g->children[0]);
        case FKind::Implies:
          return f_and({nnf(g->children[0]), nnf(f_not(g->children[1]))});
      }
      return nullptr;
    }
  }
  return nullptr;
}

FormulaPtr map_terms(const Signature& sig, const FormulaPtr& f, const TermFn& fn) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::BaseLit:
      if (f->rhs) return f_base_eq(f->positive, fn(f->lhs), fn(f->rhs));
      return f_baselit(f->positive, fn(f->lhs));
    case FKind::Eq:
      return f_eq(fn(f->lhs), fn(f->rhs));
    case FKind::Diseq:
      return f_diseq(fn(f->lhs), fn(f->rhs));
    case FKind::DefinedLit:
      return f_defined(f->positive, sig, f->defsym, fn(f->index));
    case FKind::DepthAtom: {
      TermPtr p = fn(f->lhs);
      if (!p->is_param())
        throw Error("substitution made a depth atom ill-formed: " + to_string(*f));
      return f_depth(p, f->rel, fn(f->rhs));
    }
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children) cs.push_back(map_terms(sig, c, fn));
      return f->kind == FKind::And ? f_and(std::move(cs)) : f_or(std::move(cs));
    }
    case FKind::Quantified:
      return f_quant(f->universal, f->qvar, f->qsort, f->qsort_name,
                     map_terms(sig, f->body, fn));
    case FKind::Not:
      return f_not(map_terms(sig, f->children[0], fn));
    case FKind::Implies:
      return f_implies(map_terms(sig, f->children[0], fn),
                       map_terms(sig, f->children[1], fn));
  }
  return nullptr;
}

TermPtr replace_term(const Signature& sig, const TermPtr& t, const TermPtr& pattern,
                     const TermPtr& repl) {
  if (equal(t, pattern)) return repl;
  if (t->is_var() || t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr na = replace_term(sig, a, pattern, repl);
    changed = changed || na != a;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::app(sig, t->sym, std::move(args));
}

FormulaPtr replace_term(const Signature& sig, const FormulaPtr& f,
                        const TermPtr& pattern, const TermPtr& repl) {
  if (pattern->sort != repl->sort)
    throw Error("replace_term across sorts: " + to_string(pattern) + " -> " +
                to_string(repl));
  return map_terms(sig, f, [&](const TermPtr& t) {
    return replace_term(sig, t, pattern, repl);
  });
}

static TermPtr subst_param_term(const Signature& sig, const TermPtr& t, ParamId from,
                                const TermPtr& to) {
  if (t->is_app() && t->sym == from) return to;
  if (t->is_var() || t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr na = subst_param_term(sig, a, from, to);
    changed = changed || na != a;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::app(sig, t->sym, std::move(args));
}

FormulaPtr substitute_param(const Signature& sig, const FormulaPtr& f, ParamId from,
                            const TermPtr& to) {
  if (sig.symbol(from).result != to->sort)
    throw Error("substitute_param across sorts for " + sig.symbol(from).name);
  return map_terms(sig, f, [&](const TermPtr& t) {
    return subst_param_term(sig, t, from, to);
  });
}

NodeLabel substitute_param(const Signature& sig, const NodeLabel& label, ParamId from,
                           const TermPtr& to) {
  NodeLabel out;
  for (const auto& f : label) out.insert(substitute_param(sig, f, from, to));
  return out;
}

static TermPtr subst_vars_term(const Signature& sig, const TermPtr& t,
                               const std::map<std::string, TermPtr>& sub) {
  if (t->is_var()) {
    auto it = sub.find(t->var_name);
    if (it == sub.end()) return t;
    if (it->second->sort != t->sort)
      throw Error("variable substitution across sorts: " + t->var_name);
    return it->second;
  }
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr na = subst_vars_term(sig, a, sub);
    changed = changed || na != a;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::app(sig, t->sym, std::move(args));
}

FormulaPtr substitute_vars(const Signature& sig, const FormulaPtr& f,
                           const std::map<std::string, TermPtr>& sub) {
  if (f->kind == FKind::Quantified) {
    auto inner = sub;
    inner.erase(f->qvar);
    return f_quant(f->universal, f->qvar, f->qsort, f->qsort_name,
                   substitute_vars(sig, f->body, inner));
  }
  return map_terms(sig, f, [&](const TermPtr& t) {
    return subst_vars_term(sig, t, sub);
  });
}

static TermPtr rename_term(const Signature& sig, const Renaming& rho, const TermPtr& t) {
  if (t->is_param()) {
    ParamId to = rho.apply(t->sym);
    if (to == t->sym) return t;
    if (sig.symbol(to).result != t->sort)
      throw Error("renaming across sorts: " + t->sym_name);
    return make_const(sig, to);
  }
  if (t->is_var() || t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr na = rename_term(sig, rho, a);
    changed = changed || na != a;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::app(sig, t->sym, std::move(args));
}

FormulaPtr apply_renaming(const Signature& sig, const Renaming& rho, const FormulaPtr& f) {
  return map_terms(sig, f, [&](const TermPtr& t) { return rename_term(sig, rho, t); });
}

NodeLabel apply_renaming(const Signature& sig, const Renaming& rho, const NodeLabel& label) {
  NodeLabel out;
  for (const auto& f : label) out.insert(apply_renaming(sig, rho, f));
  return out;
}

void collect_params(const TermPtr& t, std::set<ParamId>& out) {
  if (t->is_param()) out.insert(t->sym);
  if (t->is_app())
    for (const auto& a : t->args) collect_params(a, out);
}

void collect_params(const FormulaPtr& f, std::set<ParamId>& out) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return;
    case FKind::BaseLit:
      collect_params(f->lhs, out);
      if (f->rhs) collect_params(f->rhs, out);
      return;
    case FKind::Eq:
    case FKind::Diseq:
    case FKind::DepthAtom:
      collect_params(f->lhs, out);
      collect_params(f->rhs, out);
      return;
    case FKind::DefinedLit:
      collect_params(f->index, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Not:
    case FKind::Implies:
      for (const auto& c : f->children) collect_params(c, out);
      return;
    case FKind::Quantified:
      collect_params(f->body, out);
      return;
  }
}

std::set<ParamId> params_of(const FormulaPtr& f) {
  std::set<ParamId> out;
  collect_params(f, out);
  return out;
}

std::set<ParamId> params_of(const NodeLabel& label) {
  std::set<ParamId> out;
  for (const auto& f : label) collect_params(f, out);
  return out;
}

bool occurs_param(const FormulaPtr& f, ParamId p) {
  return params_of(f).count(p) != 0;
}

FormulaPtr expand_max(const Signature& sig, std::vector<TermPtr> depth_params,
                      const TermPtr& rhs) {
  if (depth_params.empty())
    return f_eq(make_const(sig, sig.nat_zero()), rhs);
  std::sort(depth_params.begin(), depth_params.end(),
            [](const TermPtr& a, const TermPtr& b) { return compare(a, b) < 0; });
  std::vector<FormulaPtr> les, eqs;
  for (const auto& p : depth_params) {
    les.push_back(f_depth(p, DepthRel::Le, rhs));
    eqs.push_back(f_depth(p, DepthRel::EqR, rhs));
  }
  les.push_back(f_or(std::move(eqs)));
  return f_and(std::move(les));
}

bool is_base_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::BaseLit:
      return true;
    case FKind::Eq:
    case FKind::Diseq:
    case FKind::DefinedLit:
    case FKind::DepthAtom:
      return false;
    case FKind::And:
    case FKind::Or:
    case FKind::Not:
    case FKind::Implies:
      for (const auto& c : f->children)
        if (!is_base_formula(c)) return false;
      return true;
    case FKind::Quantified:
      return is_base_formula(f->body);
  }
  return false;
}

}  // namespace schemata
