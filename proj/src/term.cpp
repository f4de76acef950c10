#include "schemata/term.hpp"

namespace schemata {

TermPtr Term::var(std::string name, SortId sort) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind = Kind::Var;
  t->sort = sort;
  t->var_name = std::move(name);
  t->has_var = true;
  return t;
}

TermPtr Term::app(const Signature& sig, SymbolId sym, std::vector<TermPtr> args) {
  const SymbolDecl& d = sig.symbol(sym);
  if (d.kind == SymbolKind::Defined)
    throw Error("defined symbol used as a term head: " + d.name);
  if (args.size() != d.args.size())
    throw Error("arity mismatch for " + d.name + ": expected " +
                std::to_string(d.args.size()) + ", got " + std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i]->sort != d.args[i])
      throw Error("argument " + std::to_string(i + 1) + " of " + d.name +
                  " has sort " + sig.sort(args[i]->sort).name + ", expected " +
                  sig.sort(d.args[i]).name);
  auto t = std::shared_ptr<Term>(new Term());
  t->kind = Kind::App;
  t->sort = d.result;
  t->sym = sym;
  t->sym_kind = d.kind;
  t->sym_name = d.name;
  t->args = std::move(args);
  t->has_var = false;
  for (const auto& a : t->args) t->has_var = t->has_var || a->has_var;
  return t;
}

int compare(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind == Term::Kind::Var) {
    if (a.sort != b.sort) return a.sort < b.sort ? -1 : 1;
    return a.var_name.compare(b.var_name);
  }
  if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(*a.args[i], *b.args[i])) return c;
  return 0;
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

bool equal(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }

std::string to_string(const Term& t) {
  if (t.is_var()) return t.var_name;
  if (t.args.empty()) return t.sym_name;
  std::string s = "(" + t.sym_name;
  for (const auto& a : t.args) {
    s += ' ';
    s += to_string(*a);
  }
  s += ')';
  return s;
}

TermPtr make_const(const Signature& sig, SymbolId sym) {
  return Term::app(sig, sym, {});
}

int constructor_depth(const Signature& sig, const TermPtr& t) {
  if (!sig.is_inductive(t->sort)) return 0;
  if (!t->is_constructor_app())
    throw Error("constructor_depth on a non-constructor term: " + to_string(t));
  int m = 0;
  for (const auto& a : t->args) m = std::max(m, constructor_depth(sig, a));
  return 1 + m;
}

}  // namespace schemata
