#include "schemata/validate.hpp"

#include <algorithm>
#include <set>

namespace schemata {

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    s += "[" + v.condition + "] " + v.location + ": " + v.message + "\n";
  }
  return s;
}

ValidationReport validate_signature(const Signature& sig) {
  ValidationReport rep;
  if (auto nat = sig.find_sort("nat"); !nat || !sig.is_inductive(*nat))
    rep.add("def1", "nat", "the sort nat must exist and be inductive");
  for (SymbolId i = 0; i < static_cast<SymbolId>(sig.num_symbols()); ++i) {
    const auto& s = sig.symbol(i);
    switch (s.kind) {
      case SymbolKind::Constructor:
        if (!sig.is_inductive(s.result))
          rep.add("def1", s.name, "constructor result sort is not inductive");
        break;
      case SymbolKind::BaseFunction:
        // Def. 1: every non-constant symbol of an inductive sort is a constructor.
        if (sig.is_inductive(s.result) && !s.args.empty())
          rep.add("def1", s.name,
                  "non-constructor function with an inductive result sort");
        break;
      case SymbolKind::Parameter:
        if (!s.args.empty()) rep.add("def1", s.name, "parameters are 0-ary");
        break;
      case SymbolKind::Defined:
        if (!sig.is_inductive(s.result))
          rep.add("def1", s.name, "defined symbol indexed by a non-inductive sort");
        break;
    }
  }
  for (SortId t = 0; t < static_cast<SortId>(sig.num_sorts()); ++t) {
    if (!sig.is_inductive(t) || t == sig.bool_sort()) continue;
    if (sig.constructors_of(t).empty())
      rep.add("def1", sig.sort(t).name, "inductive sort has no constructors");
  }
  return rep;
}

namespace {

void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->is_var()) out.insert(t->var_name);
  for (const auto& a : t->args) collect_vars(a, out);
}

void collect_terms_of_formula(const FormulaPtr& f, std::vector<TermPtr>& out) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return;
    case FKind::BaseLit:
      out.push_back(f->lhs);
      if (f->rhs) out.push_back(f->rhs);
      return;
    case FKind::Eq:
    case FKind::Diseq:
    case FKind::DepthAtom:
      out.push_back(f->lhs);
      out.push_back(f->rhs);
      return;
    case FKind::DefinedLit:
      out.push_back(f->index);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Not:
    case FKind::Implies:
      for (const auto& c : f->children) collect_terms_of_formula(c, out);
      return;
    case FKind::Quantified:
      collect_terms_of_formula(f->body, out);
      return;
  }
}

// All maximal inductive-sort subterms occurring anywhere in the formula.
void collect_inductive_terms(const Signature& sig, const TermPtr& t,
                             std::vector<TermPtr>& out) {
  if (sig.is_inductive(t->sort)) {
    out.push_back(t);
    return;
  }
  for (const auto& a : t->args) collect_inductive_terms(sig, a, out);
}

bool contains_constructor(const TermPtr& t) {
  if (t->is_constructor_app()) return true;
  for (const auto& a : t->args)
    if (contains_constructor(a)) return true;
  return false;
}

bool contains_inductive_var(const Signature& sig, const TermPtr& t) {
  if (t->is_var() && sig.is_inductive(t->sort)) return true;
  for (const auto& a : t->args)
    if (contains_inductive_var(sig, a)) return true;
  return false;
}

// Def. 6 condition 3 over one subformula tree.
void check_atoms(const Signature& sig, const FormulaPtr& f, const std::string& where,
                 ValidationReport& rep) {
  switch (f->kind) {
    case FKind::And:
    case FKind::Or:
      for (const auto& c : f->children) check_atoms(sig, c, where, rep);
      return;
    case FKind::DefinedLit:
      return;
    default: {
      std::set<ParamId> ps = params_of(f);
      if (ps.size() > 1)
        rep.add("def6-3", where,
                "subformula " + to_string(*f) + " contains " +
                    std::to_string(ps.size()) + " distinct parameters");
      // No defined symbol below a non-∧/∨/defined node: the only defined
      // carriers are DefinedLit nodes, so scan for them.
      std::function<bool(const FormulaPtr&)> has_def = [&](const FormulaPtr& g) {
        if (g->kind == FKind::DefinedLit) return true;
        if (g->kind == FKind::Quantified) return has_def(g->body);
        for (const auto& c : g->children)
          if (has_def(c)) return true;
        return false;
      };
      if (f->kind == FKind::Quantified && has_def(f->body))
        rep.add("def6-3", where,
                "quantified subformula contains a defined symbol: " + to_string(*f));
      return;
    }
  }
}

// Built-in backend capability scan: quantifier-free, and every base atom
// is a predicate application or a parameter (dis)equation.
void check_backend(const Signature& sig, const FormulaPtr& f, const std::string& where,
                   ValidationReport& rep) {
  (void)sig;
  switch (f->kind) {
    case FKind::Quantified:
      rep.add("backend", where,
              "the built-in backend is quantifier-free: " + to_string(*f));
      return;
    case FKind::BaseLit:
      if (f->rhs && !(f->lhs->is_param() && f->rhs->is_param()))
        rep.add("backend", where,
                "equation atom outside the built-in fragment: " + to_string(*f));
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Not:
    case FKind::Implies:
      for (const auto& c : f->children) check_backend(sig, c, where, rep);
      return;
    default:
      return;
  }
}

}  // namespace

ValidationReport validate_conjecture(const FormulaPtr& conjecture, const Signature& sig,
                                     bool builtin_backend) {
  ValidationReport rep;
  std::vector<TermPtr> terms;
  collect_terms_of_formula(conjecture, terms);
  for (const auto& t : terms) {
    if (contains_constructor(t))
      rep.add("def6-2", to_string(t),
              "constructors may not occur in a conjecture; move ground cases "
              "into rewrite-rule bodies");
    if (contains_inductive_var(sig, t))
      rep.add("def6-2", to_string(t),
              "variables of an inductive sort may not occur in a conjecture");
  }
  check_atoms(sig, conjecture, "conjecture", rep);
  if (builtin_backend) check_backend(sig, conjecture, "conjecture", rep);
  return rep;
}

ValidationReport validate_rewrite_system(const RewriteSystem& system,
                                         const Signature& sig) {
  ValidationReport rep;
  std::set<std::pair<SymbolId, SymbolId>> seen;
  // Head-recursion graph: edge d -> d' for occurrences d'_{f(x⃗)}.
  std::map<SymbolId, std::set<SymbolId>> head_edges;

  for (const auto& rule : system.rules()) {
    const std::string where =
        sig.symbol(rule.defined).name + "@" + sig.symbol(rule.constructor).name;
    const auto& ctor = sig.symbol(rule.constructor);
    if (ctor.kind != SymbolKind::Constructor) {
      rep.add("def2", where, "rule pattern head is not a constructor");
      continue;
    }
    if (rule.formals.size() != ctor.args.size()) {
      rep.add("def2", where, "pattern arity mismatch");
      continue;
    }
    std::set<std::string> formal_names;
    bool formals_ok = true;
    for (size_t i = 0; i < rule.formals.size(); ++i) {
      const auto& v = rule.formals[i];
      if (!v->is_var() || v->sort != ctor.args[i]) formals_ok = false;
      if (!formal_names.insert(v->var_name).second) formals_ok = false;
    }
    if (!formals_ok) {
      rep.add("def2", where, "pattern formals must be distinct variables "
                             "matching the constructor profile");
      continue;
    }
    TermPtr pattern = Term::app(sig, rule.constructor, rule.formals);

    // C1: free variables of the body occur among the formals.
    std::vector<TermPtr> terms;
    collect_terms_of_formula(rule.body, terms);
    std::set<std::string> vars;
    for (const auto& t : terms) collect_vars(t, vars);
    std::function<void(const FormulaPtr&, std::set<std::string>&)> drop_bound =
        [&](const FormulaPtr& f, std::set<std::string>& acc) {
          if (f->kind == FKind::Quantified) acc.insert(f->qvar);
          for (const auto& c : f->children) drop_bound(c, acc);
          if (f->body) drop_bound(f->body, acc);
        };
    std::set<std::string> bound;
    drop_bound(rule.body, bound);
    for (const auto& v : vars)
      if (!formal_names.count(v) && !bound.count(v))
        rep.add("def2-1", where, "free variable " + v + " is not a pattern formal");

    // C2: inductive terms in the body are formals or the full pattern
    // (defined atom indices are collected with the other terms).
    std::vector<TermPtr> iterms;
    for (const auto& t : terms) collect_inductive_terms(sig, t, iterms);
    for (const auto& t : iterms) {
      bool is_formal = t->is_var() && formal_names.count(t->var_name);
      if (!is_formal && !equal(t, pattern))
        rep.add("def2-2", where,
                "inductive term " + to_string(t) +
                    " is neither a pattern formal nor the full pattern");
    }

    // C3 edges: defined atoms indexed by the full pattern.
    std::function<void(const FormulaPtr&)> scan_defined = [&](const FormulaPtr& f) {
      if (f->kind == FKind::DefinedLit && equal(f->index, pattern))
        head_edges[rule.defined].insert(f->defsym);
      for (const auto& c : f->children) scan_defined(c);
      if (f->body) scan_defined(f->body);
    };
    scan_defined(rule.body);

    if (!seen.insert({rule.defined, rule.constructor}).second)
      rep.add("def2-4", where, "more than one rule for this pair");
  }

  // C4: totality over the constructors of each defined symbol's sort.
  for (SymbolId d : system.defined_symbols()) {
    SortId idx = sig.symbol(d).result;
    for (SymbolId c : sig.constructors_of(idx))
      if (!system.find(d, c))
        rep.add("def2-4", sig.symbol(d).name,
                "missing rule for constructor " + sig.symbol(c).name);
  }

  // C3: strict acyclicity of the head-recursion graph (an ordering < with
  // d' < d exists iff the graph has no cycle; self-loops included).
  {
    std::map<SymbolId, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::function<bool(SymbolId)> dfs = [&](SymbolId d) -> bool {
      state[d] = 1;
      for (SymbolId e : head_edges[d]) {
        if (state[e] == 1) return false;
        if (state[e] == 0 && !dfs(e)) return false;
      }
      state[d] = 2;
      return true;
    };
    for (const auto& [d, _] : head_edges)
      if (state[d] == 0 && !dfs(d)) {
        rep.add("def2-3", sig.symbol(d).name,
                "head-recursive occurrences must strictly descend (cycle in the "
                "dependency ordering)");
        break;
      }
  }
  return rep;
}

ValidationReport validate_rule_bodies(const RewriteSystem& system, const Signature& sig,
                                      bool builtin_backend) {
  ValidationReport rep;
  Signature scratch = sig;
  for (const auto& rule : system.rules()) {
    const std::string where =
        sig.symbol(rule.defined).name + "@" + sig.symbol(rule.constructor).name;
    // Pattern abstraction: the full pattern and every inductive formal
    // become parameters; the abstracted body must satisfy Def. 6.
    TermPtr pattern = Term::app(scratch, rule.constructor, rule.formals);
    SymbolId fresh = scratch.fresh_parameter("@abs", pattern->sort);
    FormulaPtr abs = replace_term(scratch, rule.body, pattern, make_const(scratch, fresh));
    for (const auto& v : rule.formals) {
      if (!scratch.is_inductive(v->sort)) continue;
      SymbolId pv = scratch.fresh_parameter("@abs", v->sort);
      std::map<std::string, TermPtr> sub{{v->var_name, make_const(scratch, pv)}};
      abs = substitute_vars(scratch, abs, sub);
    }
    std::vector<TermPtr> terms;
    collect_terms_of_formula(abs, terms);
    for (const auto& t : terms) {
      if (contains_constructor(t))
        rep.add("def6-4", where,
                "abstracted body still contains a constructor: " + to_string(t));
      if (contains_inductive_var(sig, t))
        rep.add("def6-4", where,
                "abstracted body contains an inductive variable: " + to_string(t));
    }
    check_atoms(scratch, abs, where, rep);
    if (builtin_backend) check_backend(scratch, rule.body, where, rep);
  }
  return rep;
}

ValidationReport validate_delta_table(const DeltaTable& table, const Signature& sig) {
  ValidationReport rep;
  for (const auto& [key, tmpl] : table.entries()) {
    auto [f, g] = key;
    const std::string where =
        "delta(" + sig.symbol(f).name + ", " + sig.symbol(g).name + ")";
    size_t n = sig.symbol(f).args.size();
    size_t m = sig.symbol(g).args.size();

    // Condition 1: built on ∨, ∧, ≐ over the distinguished variables.
    bool shape_ok = true;
    std::function<void(const FormulaPtr&)> shape = [&](const FormulaPtr& t) {
      switch (t->kind) {
        case FKind::And:
        case FKind::Or:
          for (const auto& c : t->children) shape(c);
          return;
        case FKind::True:
        case FKind::False:
        case FKind::Eq:
          return;
        default:
          shape_ok = false;
      }
    };
    shape(tmpl);
    if (!shape_ok) {
      rep.add("def3-1", where, "template must be built on and/or/= only");
      continue;
    }

    // DNF expansion; each disjunct is a set of (variable, variable) equations.
    using Disjunct = std::vector<std::pair<std::string, std::string>>;
    std::function<std::vector<Disjunct>(const FormulaPtr&)> dnf =
        [&](const FormulaPtr& t) -> std::vector<Disjunct> {
      switch (t->kind) {
        case FKind::True:
          return {{}};
        case FKind::False:
          return {};
        case FKind::Eq: {
          if (!t->lhs->is_var() || !t->rhs->is_var()) {
            shape_ok = false;
            return {{}};
          }
          return {{{t->lhs->var_name, t->rhs->var_name}}};
        }
        case FKind::Or: {
          std::vector<Disjunct> out;
          for (const auto& c : t->children)
            for (auto& d : dnf(c)) out.push_back(std::move(d));
          return out;
        }
        case FKind::And: {
          std::vector<Disjunct> acc{{}};
          for (const auto& c : t->children) {
            std::vector<Disjunct> next;
            for (const auto& lhs : acc)
              for (const auto& rhs : dnf(c)) {
                Disjunct merged = lhs;
                merged.insert(merged.end(), rhs.begin(), rhs.end());
                next.push_back(std::move(merged));
              }
            acc = std::move(next);
          }
          return acc;
        }
        default:
          shape_ok = false;
          return {};
      }
    };
    auto disjuncts = dnf(tmpl);
    if (!shape_ok) {
      rep.add("def3-1", where, "template equations must relate the distinguished "
                               "variables x1..xn, y1..ym");
      continue;
    }
    auto linked = [](const Disjunct& d, const std::string& a, const char other_side) {
      for (const auto& [l, r] : d) {
        if (l == a && !r.empty() && r[0] == other_side) return true;
        if (r == a && !l.empty() && l[0] == other_side) return true;
      }
      return false;
    };
    for (const auto& d : disjuncts) {
      for (size_t i = 1; i <= n; ++i) {
        std::string xi = "x" + std::to_string(i);
        if (!linked(d, xi, 'y'))
          rep.add("def3-2", where,
                  "a disjunct leaves " + xi + " unlinked to any y-variable");
      }
      for (size_t j = 1; j <= m; ++j) {
        std::string yj = "y" + std::to_string(j);
        if (!linked(d, yj, 'x'))
          rep.add("def3-2", where,
                  "a disjunct leaves " + yj + " unlinked to any x-variable");
      }
    }
  }
  return rep;
}

}  // namespace schemata
