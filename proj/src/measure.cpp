#include "schemata/measure.hpp"

#include <algorithm>
#include <sstream>

namespace schemata {

int Measure::cmp(const Measure& other) const {
  // Descending weight sequences; a missing element compares below any
  // present one, which matches the multiset extension on naturals.
  size_t n = std::max(weights.size(), other.weights.size());
  for (size_t i = 0; i < n; ++i) {
    long a = i < weights.size() ? weights[i] : -1;
    long b = i < other.weights.size() ? other.weights[i] : -1;
    if (a != b) return a < b ? -1 : 1;
  }
  if (separable != other.separable) return separable < other.separable ? -1 : 1;
  if (diseq != other.diseq) return diseq < other.diseq ? -1 : 1;
  if (unsolved != other.unsolved) return unsolved < other.unsolved ? -1 : 1;
  return 0;
}

std::string Measure::str() const {
  std::ostringstream os;
  os << "({";
  for (size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
  os << "}, " << separable << ", " << diseq << ", " << unsolved << ")";
  return os.str();
}

long MeasureCalc::weight(const TermPtr& t) const {
  if (t->is_var()) return 1;
  if (t->is_param()) return 1;
  long w = 1;
  for (const auto& a : t->args) w += weight(a);
  if (t->sym == rw_.signature().nat_succ()) w = 3 + arity_ + weight(t->args[0]);
  return w;
}

long MeasureCalc::defined_weight(SymbolId d) const {
  auto it = defined_memo_.find(d);
  if (it != defined_memo_.end()) return it->second;
  const Signature& sig = rw_.signature();
  SortId idx = sig.symbol(d).result;
  long best = 0;
  for (SymbolId f : sig.constructors_of(idx)) {
    const RewriteRule* rule = rw_.system().find(d, f);
    if (!rule) continue;
    // Canonical instantiation: the normal form over the rule's own
    // formals, with the full pattern collapsed to a single parameter
    // (names do not affect the weight, so the formals stand in fine).
    FormulaPtr psi = rw_.normal_form(d, f, rule->formals);
    TermPtr pattern = Term::app(sig, f, rule->formals);
    // ψ_f is the normal form with the pattern occurrences standing for a
    // single parameter (weight 1) and nested defined atoms weighted 2.
    std::function<long(const FormulaPtr&)> w = [&](const FormulaPtr& g) -> long {
      if (g->kind == FKind::DefinedLit) return g->positive ? 2 : 3;
      auto pw = [&](const TermPtr& t) { return weight_with_placeholder(t, pattern); };
      switch (g->kind) {
        case FKind::True:
        case FKind::False:
          return 1;
        case FKind::BaseLit: {
          long atom = g->rhs ? pw(g->lhs) + pw(g->rhs) + 1 : pw(g->lhs);
          return g->positive ? atom : 1 + atom;
        }
        case FKind::Eq:
          return pw(g->lhs) + pw(g->rhs) + 1;
        case FKind::Diseq:
          return 1 + pw(g->lhs) + pw(g->rhs) + 1;
        case FKind::DepthAtom:
          return pw(g->lhs) + pw(g->rhs) + (g->rel == DepthRel::Le ? 2 : 1);
        case FKind::And:
        case FKind::Or: {
          long acc = static_cast<long>(g->children.size()) - 1;
          for (const auto& c : g->children) acc += w(c);
          return acc;
        }
        case FKind::Quantified:
          return 1 + w(g->body);
        default:
          return 1;
      }
    };
    best = std::max(best, w(psi));
  }
  defined_memo_.emplace(d, 1 + best);
  return 1 + best;
}

// Term weight with occurrences of `pattern` counting as a parameter.
long MeasureCalc::weight_with_placeholder(const TermPtr& t, const TermPtr& pattern) const {
  if (equal(t, pattern)) return 1;
  if (t->is_var() || t->is_param()) return 1;
  long w = 1;
  for (const auto& a : t->args) w += weight_with_placeholder(a, pattern);
  if (t->is_app() && t->sym == rw_.signature().nat_succ())
    w = 3 + arity_ + weight_with_placeholder(t->args[0], pattern);
  return w;
}

long MeasureCalc::weight(const FormulaPtr& f) const {
  switch (f->kind) {
    case FKind::DefinedLit:
      return (f->positive ? 0 : 1) + defined_weight(f->defsym);
    case FKind::True:
    case FKind::False:
      return 1;
    case FKind::BaseLit: {
      long atom = f->rhs ? weight(f->lhs) + weight(f->rhs) + 1 : weight(f->lhs);
      return f->positive ? atom : 1 + atom;
    }
    case FKind::Eq:
      return weight(f->lhs) + weight(f->rhs) + 1;
    case FKind::Diseq:
      return 1 + weight(f->lhs) + weight(f->rhs) + 1;
    case FKind::DepthAtom:
      return weight(f->lhs) + weight(f->rhs) + (f->rel == DepthRel::Le ? 2 : 1);
    case FKind::And:
    case FKind::Or: {
      long w = static_cast<long>(f->children.size()) - 1;
      for (const auto& c : f->children) w += weight(c);
      return w;
    }
    case FKind::Quantified:
      return 1 + weight(f->body);
    case FKind::Not:
      return 1 + weight(f->children[0]);
    case FKind::Implies:
      return 3 + weight(f->children[0]) + weight(f->children[1]);
  }
  return 1;
}

bool is_solved_param(const NodeLabel& label, ParamId p) {
  const Formula* only = nullptr;
  for (const auto& f : label) {
    if (!occurs_param(f, p)) continue;
    if (only) return false;
    only = f.get();
  }
  if (!only) return false;
  return only->kind == FKind::Eq && only->lhs->is_param() && only->lhs->sym == p &&
         only->rhs->is_param();
}

static bool is_param_pair(const FormulaPtr& f, FKind kind) {
  return f->kind == kind && f->lhs->is_param() && f->rhs->is_param();
}

Measure MeasureCalc::measure(const NodeLabel& label, ParamId n_param) const {
  Measure m;
  for (const auto& f : label) {
    if (is_param_pair(f, FKind::Eq) || is_param_pair(f, FKind::Diseq)) continue;
    m.weights.push_back(weight(f));
  }
  std::sort(m.weights.begin(), m.weights.end(), std::greater<long>());

  std::set<ParamId> params = params_of(label);
  params.erase(n_param);
  std::vector<ParamId> active;
  for (ParamId p : params)
    if (!is_solved_param(label, p)) active.push_back(p);

  auto related = [&](ParamId a, ParamId b) {
    for (const auto& f : label) {
      if (!is_param_pair(f, FKind::Eq) && !is_param_pair(f, FKind::Diseq)) continue;
      ParamId l = f->lhs->sym, r = f->rhs->sym;
      if ((l == a && r == b) || (l == b && r == a)) return true;
    }
    return false;
  };
  for (size_t i = 0; i < active.size(); ++i)
    for (size_t j = i + 1; j < active.size(); ++j)
      if (!related(active[i], active[j])) m.separable++;

  // Disequations on which ≠-Decomposition applies: both sides
  // instantiated and the negated decomposition not already entailed by
  // the disequations present.
  auto instantiation_of = [&](ParamId p) -> const Formula* {
    for (const auto& f : label)
      if (f->kind == FKind::Eq && f->lhs->is_param() && f->lhs->sym == p &&
          f->rhs->is_constructor_app())
        return f.get();
    return nullptr;
  };
  std::function<bool(const FormulaPtr&)> entailed = [&](const FormulaPtr& f) -> bool {
    switch (f->kind) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Diseq: return label.contains(f);
      case FKind::And: {
        for (const auto& c : f->children)
          if (!entailed(c)) return false;
        return true;
      }
      case FKind::Or: {
        for (const auto& c : f->children)
          if (entailed(c)) return true;
        return false;
      }
      default:
        return false;
    }
  };
  for (const auto& f : label) {
    if (!is_param_pair(f, FKind::Diseq)) continue;
    const Formula* ea = instantiation_of(f->lhs->sym);
    const Formula* eb = instantiation_of(f->rhs->sym);
    if (!ea || !eb) continue;
    FormulaPtr nd = negated_delta(rw_.signature(), delta_, ea->rhs->sym, ea->rhs->args,
                                  eb->rhs->sym, eb->rhs->args);
    if (!entailed(nd)) m.diseq++;
  }

  m.unsolved = static_cast<long>(active.size());
  return m;
}

}  // namespace schemata
