#include "schemata/delta.hpp"

namespace schemata {

void DeltaTable::add(SymbolId f, SymbolId g, FormulaPtr tmpl) {
  if (entries_.count({f, g}) || entries_.count({g, f}))
    throw Error("duplicate delta entry");
  entries_.emplace(std::make_pair(f, g), std::move(tmpl));
}

const FormulaPtr* DeltaTable::find(SymbolId f, SymbolId g, bool* swapped) const {
  if (auto it = entries_.find({f, g}); it != entries_.end()) {
    *swapped = false;
    return &it->second;
  }
  if (auto it = entries_.find({g, f}); it != entries_.end()) {
    *swapped = true;
    return &it->second;
  }
  return nullptr;
}

static std::map<std::string, TermPtr> delta_substitution(
    const std::vector<TermPtr>& xs, const std::vector<TermPtr>& ys, bool swapped) {
  std::map<std::string, TermPtr> sub;
  const auto& for_x = swapped ? ys : xs;
  const auto& for_y = swapped ? xs : ys;
  for (size_t i = 0; i < for_x.size(); ++i)
    sub["x" + std::to_string(i + 1)] = for_x[i];
  for (size_t j = 0; j < for_y.size(); ++j)
    sub["y" + std::to_string(j + 1)] = for_y[j];
  return sub;
}

FormulaPtr delta(const Signature& sig, const DeltaTable& table, SymbolId f,
                 const std::vector<TermPtr>& s, SymbolId g,
                 const std::vector<TermPtr>& t) {
  if (sig.symbol(f).args.size() != s.size() || sig.symbol(g).args.size() != t.size())
    throw Error("delta: argument vectors do not match constructor profiles");
  if (sig.symbol(f).result != sig.symbol(g).result)
    throw Error("delta: constructors of different sorts");
  bool swapped = false;
  if (const FormulaPtr* tmpl = table.find(f, g, &swapped))
    return substitute_vars(sig, *tmpl, delta_substitution(s, t, swapped));
  if (f != g) return f_false();
  std::vector<FormulaPtr> eqs;
  for (size_t i = 0; i < s.size(); ++i) eqs.push_back(f_eq(s[i], t[i]));
  return f_and(std::move(eqs));
}

FormulaPtr negated_delta(const Signature& sig, const DeltaTable& table, SymbolId f,
                         const std::vector<TermPtr>& s, SymbolId g,
                         const std::vector<TermPtr>& t) {
  return nnf(f_not(delta(sig, table, f, s, g, t)));
}

bool ground_delta_equal(const Signature& sig, const DeltaTable& table,
                        const TermPtr& u, const TermPtr& v) {
  if (equal(u, v)) return true;
  if (!u->is_constructor_app() || !v->is_constructor_app()) return false;
  FormulaPtr d = delta(sig, table, u->sym, u->args, v->sym, v->args);
  std::function<bool(const FormulaPtr&)> eval = [&](const FormulaPtr& f) -> bool {
    switch (f->kind) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Eq: return ground_delta_equal(sig, table, f->lhs, f->rhs);
      case FKind::Diseq: return !ground_delta_equal(sig, table, f->lhs, f->rhs);
      case FKind::And: {
        for (const auto& c : f->children)
          if (!eval(c)) return false;
        return true;
      }
      case FKind::Or: {
        for (const auto& c : f->children)
          if (eval(c)) return true;
        return false;
      }
      default:
        throw Error("ground delta evaluation over a non-equational formula: " +
                    to_string(*f));
    }
  };
  return eval(d);
}

}  // namespace schemata
