#include "schemata/formula.hpp"

#include <algorithm>

namespace schemata {

struct FormulaFactory {
  static std::shared_ptr<Formula> make(FKind k) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = k;
    return f;
  }
};

static const FormulaPtr kTrue = [] {
  return FormulaFactory::make(FKind::True);
}();
static const FormulaPtr kFalse = [] {
  return FormulaFactory::make(FKind::False);
}();

FormulaPtr f_true() { return kTrue; }
FormulaPtr f_false() { return kFalse; }

bool is_true(const FormulaPtr& f) { return f->kind == FKind::True; }
bool is_false(const FormulaPtr& f) { return f->kind == FKind::False; }

FormulaPtr f_baselit(bool positive, TermPtr atom) {
  auto f = FormulaFactory::make(FKind::BaseLit);
  f->positive = positive;
  f->lhs = std::move(atom);
  return f;
}

FormulaPtr f_base_eq(bool positive, TermPtr l, TermPtr r) {
  if (equal(l, r)) return positive ? f_true() : f_false();
  auto f = FormulaFactory::make(FKind::BaseLit);
  f->positive = positive;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_eq(TermPtr l, TermPtr r) {
  if (equal(l, r)) return f_true();
  auto f = FormulaFactory::make(FKind::Eq);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_diseq(TermPtr l, TermPtr r) {
  if (equal(l, r)) return f_false();
  if (l->is_param() && r->is_param() && compare(l, r) > 0) std::swap(l, r);
  auto f = FormulaFactory::make(FKind::Diseq);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr f_defined(bool positive, const Signature& sig, SymbolId d, TermPtr index) {
  const SymbolDecl& decl = sig.symbol(d);
  if (decl.kind != SymbolKind::Defined)
    throw Error("not a defined symbol: " + decl.name);
  if (index->sort != decl.result)
    throw Error("defined atom " + decl.name + " indexed by a term of sort " +
                sig.sort(index->sort).name);
  auto f = FormulaFactory::make(FKind::DefinedLit);
  f->positive = positive;
  f->defsym = d;
  f->defname = decl.name;
  f->index = std::move(index);
  return f;
}

FormulaPtr f_depth(TermPtr param, DepthRel rel, TermPtr rhs) {
  if (!param->is_param())
    throw Error("depth atom over a non-parameter term: " + to_string(param));
  if (rhs->is_constructor_app() && rhs->sym_name == "0" && rhs->args.empty())
    return f_false();
  auto f = FormulaFactory::make(FKind::DepthAtom);
  f->lhs = std::move(param);
  f->rel = rel;
  f->rhs = std::move(rhs);
  return f;
}

static FormulaPtr flatten(FKind kind, std::vector<FormulaPtr> children) {
  const FormulaPtr shortcut = kind == FKind::And ? f_false() : f_true();
  const FormulaPtr neutral = kind == FKind::And ? f_true() : f_false();
  std::vector<FormulaPtr> out;
  out.reserve(children.size());
  for (auto& c : children) {
    if (!c) throw Error("null formula child");
    if (c->kind == kind) {
      for (const auto& g : c->children) out.push_back(g);
    } else if (c->kind == shortcut->kind) {
      return shortcut;
    } else if (c->kind != neutral->kind) {
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
            out.end());
  if (out.empty()) return neutral;
  if (out.size() == 1) return out.front();
  auto f = FormulaFactory::make(kind);
  f->children = std::move(out);
  return f;
}

FormulaPtr f_and(std::vector<FormulaPtr> children) {
  return flatten(FKind::And, std::move(children));
}

FormulaPtr f_or(std::vector<FormulaPtr> children) {
  return flatten(FKind::Or, std::move(children));
}

FormulaPtr f_quant(bool universal, std::string var, SortId sort,
                   const std::string& sort_name, FormulaPtr body) {
  auto f = FormulaFactory::make(FKind::Quantified);
  f->universal = universal;
  f->qvar = std::move(var);
  f->qsort = sort;
  f->qsort_name = sort_name;
  f->body = std::move(body);
  return f;
}

FormulaPtr flip_literal(const FormulaPtr& f) {
  if (f->kind == FKind::BaseLit) {
    if (f->rhs) return f_base_eq(!f->positive, f->lhs, f->rhs);
    return f_baselit(!f->positive, f->lhs);
  }
  if (f->kind == FKind::DefinedLit) {
    auto g = FormulaFactory::make(FKind::DefinedLit);
    g->positive = !f->positive;
    g->defsym = f->defsym;
    g->defname = f->defname;
    g->index = f->index;
    return g;
  }
  throw Error("flip_literal on a non-literal: " + to_string(*f));
}

FormulaPtr f_not(FormulaPtr x) {
  auto f = FormulaFactory::make(FKind::Not);
  f->children = {std::move(x)};
  return f;
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  auto f = FormulaFactory::make(FKind::Implies);
  f->children = {std::move(a), std::move(b)};
  return f;
}

static int cmp_term_opt(const TermPtr& a, const TermPtr& b) {
  if (!a && !b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  return compare(a, b);
}

int compare(const Formula& a, const Formula& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case FKind::True:
    case FKind::False:
      return 0;
    case FKind::BaseLit:
      if (a.positive != b.positive) return a.positive ? -1 : 1;
      if (int c = cmp_term_opt(a.lhs, b.lhs)) return c;
      return cmp_term_opt(a.rhs, b.rhs);
    case FKind::Eq:
    case FKind::Diseq:
      if (int c = compare(a.lhs, b.lhs)) return c;
      return compare(a.rhs, b.rhs);
    case FKind::DefinedLit:
      if (a.positive != b.positive) return a.positive ? -1 : 1;
      if (a.defsym != b.defsym) return a.defsym < b.defsym ? -1 : 1;
      return compare(a.index, b.index);
    case FKind::DepthAtom:
      if (a.rel != b.rel) return a.rel < b.rel ? -1 : 1;
      if (int c = compare(a.lhs, b.lhs)) return c;
      return compare(a.rhs, b.rhs);
    case FKind::And:
    case FKind::Or: {
      if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
      for (size_t i = 0; i < a.children.size(); ++i)
        if (int c = compare(*a.children[i], *b.children[i])) return c;
      return 0;
    }
    case FKind::Quantified: {
      if (a.universal != b.universal) return a.universal ? -1 : 1;
      if (a.qsort != b.qsort) return a.qsort < b.qsort ? -1 : 1;
      if (int c = a.qvar.compare(b.qvar)) return c < 0 ? -1 : 1;
      return compare(*a.body, *b.body);
    }
    case FKind::Not:
      return compare(*a.children[0], *b.children[0]);
    case FKind::Implies: {
      if (int c = compare(*a.children[0], *b.children[0])) return c;
      return compare(*a.children[1], *b.children[1]);
    }
  }
  return 0;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

static const char* rel_name(DepthRel r) {
  switch (r) {
    case DepthRel::EqR: return "=";
    case DepthRel::Lt: return "<";
    case DepthRel::Le: return "<=";
  }
  return "?";
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case FKind::True: return "true";
    case FKind::False: return "false";
    case FKind::BaseLit: {
      std::string atom = f.rhs ? "(= " + to_string(f.lhs) + " " + to_string(f.rhs) + ")"
                               : to_string(f.lhs);
      return f.positive ? atom : "(not " + atom + ")";
    }
    case FKind::Eq:
      return "(= " + to_string(f.lhs) + " " + to_string(f.rhs) + ")";
    case FKind::Diseq:
      return "(/= " + to_string(f.lhs) + " " + to_string(f.rhs) + ")";
    case FKind::DefinedLit: {
      std::string atom = "(" + f.defname + " " + to_string(f.index) + ")";
      return f.positive ? atom : "(not " + atom + ")";
    }
    case FKind::DepthAtom:
      return "(" + std::string(rel_name(f.rel)) + " (depth " + to_string(f.lhs) +
             ") " + to_string(f.rhs) + ")";
    case FKind::And:
    case FKind::Or: {
      std::string s = f.kind == FKind::And ? "(and" : "(or";
      for (const auto& c : f.children) s += " " + to_string(*c);
      return s + ")";
    }
    case FKind::Quantified:
      return std::string("(") + (f.universal ? "forall" : "exists") + " (" + f.qvar +
             " " + f.qsort_name + ") " + to_string(*f.body) + ")";
    case FKind::Not:
      return "(not " + to_string(*f.children[0]) + ")";
    case FKind::Implies:
      return "(=> " + to_string(*f.children[0]) + " " + to_string(*f.children[1]) + ")";
  }
  return "?";
}

}  // namespace schemata
