#include "schemata/tableau.hpp"

#include <algorithm>
#include <functional>

namespace schemata {

const char* rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::Start: return "start";
    case RuleTag::OrDec: return "or-dec";
    case RuleTag::AndDec: return "and-dec";
    case RuleTag::Closure: return "closure";
    case RuleTag::EqClosure: return "eq-closure";
    case RuleTag::NClosure: return "n-closure";
    case RuleTag::Unfold: return "unfold";
    case RuleTag::EqDec: return "eq-dec";
    case RuleTag::DiseqDec: return "diseq-dec";
    case RuleTag::Replacement: return "replacement";
    case RuleTag::Strictness: return "strictness";
    case RuleTag::LtDec: return "lt-dec";
    case RuleTag::LtSeparation: return "lt-separation";
    case RuleTag::Separation: return "separation";
    case RuleTag::Explosion: return "explosion";
    case RuleTag::NExplosion: return "n-explosion";
    case RuleTag::Loop: return "loop";
  }
  return "?";
}

long ProofTree::count_rule(RuleTag tag) const {
  long n = 0;
  for (const auto& node : nodes)
    if (node.via == tag) n++;
  return n;
}

NodeLabel noneq(const NodeLabel& label) {
  NodeLabel out;
  for (const auto& f : label)
    if (f->kind != FKind::Eq) out.insert(f);
  return out;
}

// ---------------------------------------------------------------------------
// Renaming subsumption search
// ---------------------------------------------------------------------------

namespace {

struct SubsumeMatcher {
  const Signature& sig;
  ParamId n_param;
  std::map<ParamId, ParamId> bind;

  bool match_term(const TermPtr& p, const TermPtr& t) {
    if (p->is_param()) {
      if (!t->is_param()) return false;
      if (p->sym == n_param) return t->sym == n_param;
      if (t->sym == n_param) return false;
      if (p->sort != t->sort) return false;
      auto it = bind.find(p->sym);
      if (it != bind.end()) return it->second == t->sym;
      bind.emplace(p->sym, t->sym);
      return true;
    }
    if (p->kind != t->kind) return false;
    if (p->is_var()) return p->sort == t->sort && p->var_name == t->var_name;
    if (p->sym != t->sym || p->args.size() != t->args.size()) return false;
    for (size_t i = 0; i < p->args.size(); ++i)
      if (!match_term(p->args[i], t->args[i])) return false;
    return true;
  }

  bool match_children(const std::vector<FormulaPtr>& ps,
                      const std::vector<FormulaPtr>& ts, size_t i,
                      std::vector<bool>& used) {
    if (i == ps.size()) return true;
    for (size_t j = 0; j < ts.size(); ++j) {
      if (used[j]) continue;
      auto saved = bind;
      if (match_formula(ps[i], ts[j])) {
        used[j] = true;
        if (match_children(ps, ts, i + 1, used)) return true;
        used[j] = false;
      }
      bind = std::move(saved);
    }
    return false;
  }

  bool match_formula(const FormulaPtr& p, const FormulaPtr& t) {
    if (p->kind != t->kind) return false;
    switch (p->kind) {
      case FKind::True:
      case FKind::False:
        return true;
      case FKind::BaseLit: {
        if (p->positive != t->positive) return false;
        if ((p->rhs == nullptr) != (t->rhs == nullptr)) return false;
        if (!match_term(p->lhs, t->lhs)) return false;
        return !p->rhs || match_term(p->rhs, t->rhs);
      }
      case FKind::Eq:
        return match_term(p->lhs, t->lhs) && match_term(p->rhs, t->rhs);
      case FKind::Diseq: {
        auto saved = bind;
        if (match_term(p->lhs, t->lhs) && match_term(p->rhs, t->rhs)) return true;
        bind = std::move(saved);
        return match_term(p->lhs, t->rhs) && match_term(p->rhs, t->lhs);
      }
      case FKind::DefinedLit:
        return p->positive == t->positive && p->defsym == t->defsym &&
               match_term(p->index, t->index);
      case FKind::DepthAtom:
        return p->rel == t->rel && match_term(p->lhs, t->lhs) &&
               match_term(p->rhs, t->rhs);
      case FKind::And:
      case FKind::Or: {
        if (p->children.size() != t->children.size()) return false;
        std::vector<bool> used(t->children.size(), false);
        return match_children(p->children, t->children, 0, used);
      }
      case FKind::Quantified:
        return p->universal == t->universal && p->qsort == t->qsort &&
               p->qvar == t->qvar && match_formula(p->body, t->body);
      case FKind::Not:
      case FKind::Implies:
        return false;  // never in node labels
    }
    return false;
  }
};

size_t param_count(const FormulaPtr& f) { return params_of(f).size(); }

}  // namespace

std::optional<Renaming> find_subsuming_renaming(const Signature& sig,
                                                const NodeLabel& current_noneq,
                                                const NodeLabel& ancestor_noneq,
                                                ParamId n_param) {
  std::vector<FormulaPtr> ps(ancestor_noneq.begin(), ancestor_noneq.end());
  // Most-constrained first keeps the search narrow.
  std::stable_sort(ps.begin(), ps.end(), [](const FormulaPtr& a, const FormulaPtr& b) {
    return param_count(a) > param_count(b);
  });
  std::vector<FormulaPtr> ts(current_noneq.begin(), current_noneq.end());

  SubsumeMatcher m{sig, n_param, {}};
  std::optional<Renaming> result;

  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == ps.size()) {
      Renaming rho;
      for (const auto& [from, to] : m.bind)
        if (from != to) rho.set(sig, from, to);
      NodeLabel image = apply_renaming(sig, rho, ancestor_noneq);
      for (const auto& f : image)
        if (!current_noneq.contains(f)) return false;
      result = rho;
      return true;
    }
    for (const auto& cand : ts) {
      auto saved = m.bind;
      if (m.match_formula(ps[i], cand)) {
        if (go(i + 1)) return true;
      }
      m.bind = std::move(saved);
    }
    return false;
  };
  if (go(0)) return result;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rule selection
// ---------------------------------------------------------------------------

struct Prover::BranchState {
  std::set<std::string> fired;  // instance signatures (per branch)
  struct LayerRec {
    int node;
    NodeLabel noneq_label;
    int nexp;
  };
  std::vector<LayerRec> layers;  // ancestor non-leaf layers, oldest first
  std::optional<Measure> pending;  // premise measure awaiting decomposition
};

struct Prover::RuleDesc {
  RuleTag tag;
  std::string detail;
  FormulaPtr a, b;                 // premise slots (rule-specific)
  std::string sig_key;             // nonempty: blocked per branch once fired
  std::vector<NodeLabel> children;  // prebuilt except for Explosion
};

static bool is_param_eq(const FormulaPtr& f) {
  return f->kind == FKind::Eq && f->lhs->is_param() && f->rhs->is_param();
}
static bool is_param_diseq(const FormulaPtr& f) {
  return f->kind == FKind::Diseq && f->lhs->is_param() && f->rhs->is_param();
}
static bool is_instantiation(const FormulaPtr& f) {
  return f->kind == FKind::Eq && f->lhs->is_param() && f->rhs->is_constructor_app();
}

bool entailed_by_present_diseqs(const NodeLabel& label, const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Diseq: return label.contains(f);
    case FKind::And:
      for (const auto& c : f->children)
        if (!entailed_by_present_diseqs(label, c)) return false;
      return true;
    case FKind::Or:
      for (const auto& c : f->children)
        if (entailed_by_present_diseqs(label, c)) return true;
      return false;
    default:
      return false;
  }
}

bool Prover::and_or_applicable(const NodeLabel& label) const {
  for (const auto& f : label) {
    if (f->kind == FKind::And && !is_base_formula(f)) return true;
    if (f->kind == FKind::Or) return true;
  }
  return false;
}

std::optional<Prover::RuleDesc> Prover::find_rule(const NodeLabel& label,
                                                  const BranchState& state) const {
  // P0: closure rules.
  for (const auto& f : label) {
    std::vector<FormulaPtr> comps;
    switch (f->kind) {
      case FKind::BaseLit:
      case FKind::DefinedLit:
        comps.push_back(flip_literal(f));
        break;
      case FKind::Eq:
        comps.push_back(f_diseq(f->lhs, f->rhs));
        break;
      case FKind::Diseq:
        comps.push_back(f_eq(f->lhs, f->rhs));
        comps.push_back(f_eq(f->rhs, f->lhs));
        break;
      default:
        break;
    }
    for (const auto& c : comps) {
      if (c->kind == FKind::True || c->kind == FKind::False) continue;
      if (label.contains(c)) {
        RuleDesc d{RuleTag::Closure, to_string(*f) + " vs " + to_string(*c), f, c, "", {}};
        NodeLabel child = label;
        child.erase(f);
        child.erase(c);
        child.insert(f_false());
        d.children = {std::move(child)};
        return d;
      }
    }
  }
  for (const auto& f : label) {
    if (f->kind == FKind::Diseq && equal(f->lhs, f->rhs)) {
      RuleDesc d{RuleTag::EqClosure, to_string(*f), f, nullptr, "", {}};
      NodeLabel child = label;
      child.erase(f);
      child.insert(f_false());
      d.children = {std::move(child)};
      return d;
    }
  }
  for (const auto& f : label) {
    if (f->kind != FKind::Eq) continue;
    auto zero_vs_succ = [&](const TermPtr& a, const TermPtr& b) {
      return a->is_constructor_app() && a->sym == sig_.nat_zero() &&
             b->is_constructor_app() && b->sym == sig_.nat_succ();
    };
    if (zero_vs_succ(f->lhs, f->rhs) || zero_vs_succ(f->rhs, f->lhs)) {
      RuleDesc d{RuleTag::NClosure, to_string(*f), f, nullptr, "", {}};
      NodeLabel child = label;
      child.erase(f);
      child.insert(f_false());
      d.children = {std::move(child)};
      return d;
    }
  }

  // P1: decomposition, conjunctions first.
  for (const auto& f : label) {
    if (f->kind != FKind::And || is_base_formula(f)) continue;
    RuleDesc d{RuleTag::AndDec, to_string(*f), f, nullptr, "", {}};
    NodeLabel child = label;
    child.erase(f);
    for (const auto& c : f->children) child.insert(c);
    d.children = {std::move(child)};
    return d;
  }
  for (const auto& f : label) {
    if (f->kind != FKind::Or) continue;
    RuleDesc d{RuleTag::OrDec, to_string(*f), f, nullptr, "", {}};
    for (const auto& c : f->children) {
      NodeLabel child = label;
      child.erase(f);
      child.insert(c);
      d.children.push_back(std::move(child));
    }
    return d;
  }

  // P2, in the documented order, first match wins.

  // Replacement: an equation A ≐ B between parameters with A occurring
  // elsewhere; rewrites every other formula. N is never involved.
  for (const auto& f : label) {
    if (!is_param_eq(f)) continue;
    if (f->lhs->sym == n_param_ || f->rhs->sym == n_param_) continue;
    ParamId a = f->lhs->sym;
    bool occurs_elsewhere = false;
    for (const auto& g : label)
      if (g != f && !equal(g, f) && occurs_param(g, a)) {
        occurs_elsewhere = true;
        break;
      }
    if (!occurs_elsewhere) continue;
    RuleDesc d{RuleTag::Replacement,
               sig_.symbol(a).name + " := " + to_string(f->rhs), f, nullptr, "", {}};
    NodeLabel child;
    for (const auto& g : label)
      child.insert(equal(g, f) ? g : substitute_param(sig_, g, a, f->rhs));
    d.children = {std::move(child)};
    return d;
  }

  // Unfolding: d_A (either polarity) with an instantiation A ≐ f(B⃗);
  // once per (polarity, d, A, f(B⃗)) per branch.
  for (const auto& f : label) {
    if (f->kind != FKind::DefinedLit || !f->index->is_param()) continue;
    for (const auto& g : label) {
      if (!is_instantiation(g) || g->lhs->sym != f->index->sym) continue;
      std::string key = std::string("U|") + (f->positive ? "+" : "-") + f->defname +
                        "|" + to_string(g->lhs) + "|" + to_string(g->rhs);
      if (state.fired.count(key)) continue;
      FormulaPtr psi = rewriter_.unfold(f->defsym, f->index, g->rhs->sym,
                                        g->rhs->args, f->positive);
      NodeLabel child = label;
      child.erase(f);
      child.insert(psi);
      if (child == label) continue;
      RuleDesc d{RuleTag::Unfold,
                 to_string(*f) + " via " + to_string(*g), f, g, key, {}};
      d.children = {std::move(child)};
      return d;
    }
  }

  // ≐-Decomposition: two instantiations of the same parameter.
  for (size_t i = 0; i < label.formulas().size(); ++i) {
    const FormulaPtr& e1 = label.formulas()[i];
    if (!is_instantiation(e1)) continue;
    for (size_t j = i + 1; j < label.formulas().size(); ++j) {
      const FormulaPtr& e2 = label.formulas()[j];
      if (!is_instantiation(e2) || e2->lhs->sym != e1->lhs->sym) continue;
      FormulaPtr dec = delta(sig_, delta_, e1->rhs->sym, e1->rhs->args,
                             e2->rhs->sym, e2->rhs->args);
      RuleDesc d{RuleTag::EqDec, to_string(*e1) + ", " + to_string(*e2), e1, e2, "", {}};
      NodeLabel child = label;
      child.erase(e2);
      child.insert(dec);
      d.children = {std::move(child)};
      return d;
    }
  }

  // ≠-Decomposition: A ≠ B with both sides instantiated; skipped when the
  // negated decomposition is already entailed by present disequations.
  for (const auto& f : label) {
    if (!is_param_diseq(f)) continue;
    const Formula* ea = nullptr;
    const Formula* eb = nullptr;
    for (const auto& g : label) {
      if (!is_instantiation(g)) continue;
      if (!ea && g->lhs->sym == f->lhs->sym) ea = g.get();
      if (!eb && g->lhs->sym == f->rhs->sym) eb = g.get();
    }
    if (!ea || !eb) continue;
    FormulaPtr nd = negated_delta(sig_, delta_, ea->rhs->sym, ea->rhs->args,
                                  eb->rhs->sym, eb->rhs->args);
    if (entailed_by_present_diseqs(label, nd)) continue;
    std::string key = "D|" + to_string(*f) + "|" + to_string(ea->rhs) + "|" +
                      to_string(eb->rhs);
    if (state.fired.count(key)) continue;
    RuleDesc d{RuleTag::DiseqDec, to_string(*f), f, nullptr, key, {}};
    NodeLabel child = label;
    child.insert(nd);
    d.children = {std::move(child)};
    return d;
  }

  // Strictness: depth(A) ≤ t becomes depth(A) ≐ t ∨ depth(A) < t.
  for (const auto& f : label) {
    if (f->kind != FKind::DepthAtom || f->rel != DepthRel::Le) continue;
    RuleDesc d{RuleTag::Strictness, to_string(*f), f, nullptr, "", {}};
    NodeLabel child = label;
    child.erase(f);
    child.insert(f_or({f_depth(f->lhs, DepthRel::EqR, f->rhs),
                       f_depth(f->lhs, DepthRel::Lt, f->rhs)}));
    d.children = {std::move(child)};
    return d;
  }

  // <-Decomposition: depth(A) < s(t) becomes depth(A) ≤ t.
  for (const auto& f : label) {
    if (f->kind != FKind::DepthAtom || f->rel != DepthRel::Lt) continue;
    if (!(f->rhs->is_constructor_app() && f->rhs->sym == sig_.nat_succ())) continue;
    RuleDesc d{RuleTag::LtDec, to_string(*f), f, nullptr, "", {}};
    NodeLabel child = label;
    child.erase(f);
    child.insert(f_depth(f->lhs, DepthRel::Le, f->rhs->args[0]));
    d.children = {std::move(child)};
    return d;
  }

  // <-Separation: depth(A) < N with depth(B) ≐ N separates A from B.
  for (const auto& f : label) {
    if (f->kind != FKind::DepthAtom || f->rel != DepthRel::Lt) continue;
    if (!(f->rhs->is_param() && f->rhs->sym == n_param_)) continue;
    for (const auto& g : label) {
      if (g->kind != FKind::DepthAtom || g->rel != DepthRel::EqR) continue;
      if (!(g->rhs->is_param() && g->rhs->sym == n_param_)) continue;
      FormulaPtr diseq = f_diseq(f->lhs, g->lhs);
      if (!is_false(diseq) && label.contains(diseq)) continue;
      std::string key = "LS|" + to_string(*f) + "|" + to_string(*g);
      if (state.fired.count(key)) continue;
      RuleDesc d{RuleTag::LtSeparation,
                 to_string(f->lhs) + " vs " + to_string(g->lhs), f, g, key, {}};
      NodeLabel child = label;
      child.insert(diseq);
      d.children = {std::move(child)};
      return d;
    }
  }

  // Separation: unrelated pairs of unsolved same-sort parameters
  // occurring in the label; N never participates.
  {
    std::set<ParamId> params = params_of(label);
    params.erase(n_param_);
    std::vector<ParamId> active;
    for (ParamId p : params)
      if (!is_solved_param(label, p)) active.push_back(p);
    auto related = [&](ParamId a, ParamId b) {
      TermPtr ta = make_const(sig_, a), tb = make_const(sig_, b);
      return label.contains(f_eq(ta, tb)) || label.contains(f_eq(tb, ta)) ||
             label.contains(f_diseq(ta, tb));
    };
    for (size_t i = 0; i < active.size(); ++i)
      for (size_t j = i + 1; j < active.size(); ++j) {
        ParamId p = active[i], q = active[j];
        if (sig_.symbol(p).result != sig_.symbol(q).result) continue;
        if (related(p, q)) continue;
        TermPtr tp = make_const(sig_, p), tq = make_const(sig_, q);
        FormulaPtr split = f_or({f_eq(tp, tq), f_diseq(tp, tq)});
        if (label.contains(split)) continue;
        std::string key = "S|" + sig_.symbol(p).name + "|" + sig_.symbol(q).name;
        if (state.fired.count(key)) continue;
        RuleDesc d{RuleTag::Separation,
                   sig_.symbol(p).name + " vs " + sig_.symbol(q).name,
                   nullptr, nullptr, key, {}};
        NodeLabel child = label;
        child.insert(split);
        d.children = {std::move(child)};
        return d;
      }
  }

  // Explosion: depth(B) ≐ s(t) instantiates B; children are built later
  // because fresh parameters must be registered.
  for (const auto& f : label) {
    if (f->kind != FKind::DepthAtom || f->rel != DepthRel::EqR) continue;
    if (!(f->rhs->is_constructor_app() && f->rhs->sym == sig_.nat_succ())) continue;
    return RuleDesc{RuleTag::Explosion, to_string(*f), f, nullptr, "", {}};
  }

  return std::nullopt;
}

std::vector<NodeLabel> Prover::build_children(const NodeLabel& label, RuleDesc& desc) {
  if (desc.tag != RuleTag::Explosion) return desc.children;
  const FormulaPtr& f = desc.a;
  const TermPtr& target = f->lhs;
  TermPtr t = f->rhs->args[0];
  std::vector<FormulaPtr> disjuncts;
  for (SymbolId ctor : sig_.constructors_of(target->sort)) {
    std::vector<TermPtr> args;
    std::vector<TermPtr> inductive_args;
    for (SortId arg_sort : sig_.symbol(ctor).args) {
      SymbolId p = sig_.fresh_parameter(target->sym_name, arg_sort);
      TermPtr pt = make_const(sig_, p);
      if (sig_.is_inductive(arg_sort)) inductive_args.push_back(pt);
      args.push_back(std::move(pt));
    }
    disjuncts.push_back(f_and({expand_max(sig_, inductive_args, t),
                               f_eq(target, Term::app(sig_, ctor, args))}));
  }
  NodeLabel child = label;
  child.erase(f);
  child.insert(f_or(std::move(disjuncts)));
  return {std::move(child)};
}

// ---------------------------------------------------------------------------
// Start and layer predicates
// ---------------------------------------------------------------------------

Prover::Prover(const Signature& sig, const RewriteSystem& rules, const DeltaTable& delta,
               ProverOptions options)
    : sig_(sig), rules_(rules), delta_(delta), rewriter_(sig_, rules_),
      opts_(options) {}

NodeLabel Prover::start(const FormulaPtr& conjecture) {
  NodeLabel root;
  root.insert(conjecture);
  std::vector<TermPtr> depth_params;
  for (ParamId p : params_of(conjecture))
    if (sig_.is_inductive(sig_.symbol(p).result))
      depth_params.push_back(make_const(sig_, p));
  if (!depth_params.empty()) {
    if (n_param_ < 0) {
      n_param_ = sig_.fresh_parameter("N", sig_.nat_sort());
      n_term_ = make_const(sig_, n_param_);
    }
    root.insert(expand_max(sig_, depth_params, n_term_));
  }
  return root;
}

bool Prover::is_layer(const NodeLabel& label) const {
  if (label.closed()) return false;
  BranchState empty;
  return !find_rule(label, empty).has_value();
}

// ---------------------------------------------------------------------------
// Invariant checks (debug instrumentation)
// ---------------------------------------------------------------------------

void Prover::check_layer_invariants(const ProofNode& node,
                                    std::vector<std::string>& out) const {
  const NodeLabel& label = node.label;
  auto report = [&](const std::string& what) {
    out.push_back("layer node " + std::to_string(node.id) + ": " + what);
  };
  for (const auto& f : label) {
    if (f->kind == FKind::DepthAtom) {
      if (f->rel == DepthRel::Le) report("depth atom with relation <=: " + to_string(*f));
      if (!(f->rhs->is_param() && f->rhs->sym == n_param_))
        report("depth atom rhs is not N: " + to_string(*f));
      continue;
    }
    bool ok = is_base_formula(f) ||
              (f->kind == FKind::DefinedLit && f->index->is_param()) ||
              is_param_diseq(f) || f->kind == FKind::Eq;
    if (!ok) report("unexpected layer formula: " + to_string(*f));
  }
  // Every equation between parameters is solved.
  for (const auto& f : label)
    if (is_param_eq(f) && !is_solved_param(label, f->lhs->sym))
      report("unsolved parameter equation: " + to_string(*f));
  // Separation completeness over unsolved non-N parameters.
  std::set<ParamId> params = params_of(label);
  params.erase(n_param_);
  std::vector<ParamId> unsolved;
  for (ParamId p : params)
    if (!is_solved_param(label, p)) unsolved.push_back(p);
  for (size_t i = 0; i < unsolved.size(); ++i)
    for (size_t j = i + 1; j < unsolved.size(); ++j) {
      ParamId p = unsolved[i], q = unsolved[j];
      if (sig_.symbol(p).result != sig_.symbol(q).result) continue;
      TermPtr tp = make_const(sig_, p), tq = make_const(sig_, q);
      bool separated = label.contains(f_diseq(tp, tq));
      if (!separated) {
        for (const auto& f : label) {
          if (!is_param_eq(f)) continue;
          ParamId l = f->lhs->sym, r = f->rhs->sym;
          if ((l == p || l == q || r == p || r == q) && is_solved_param(label, l)) {
            separated = true;
            break;
          }
        }
      }
      if (!separated)
        report("unseparated parameter pair " + sig_.symbol(p).name + ", " +
               sig_.symbol(q).name);
    }
}

void Prover::check_leaf_purity(const ProofNode& node,
                               std::vector<std::string>& out) const {
  NodeLabel pure = noneq(node.label);
  for (const auto& f : pure) {
    if (is_base_formula(f) || is_param_diseq(f)) continue;
    out.push_back("open leaf " + std::to_string(node.id) +
                  " contains a non-base formula: " + to_string(*f));
  }
  if (n_param_ >= 0 && params_of(node.label).count(n_param_))
    out.push_back("open leaf " + std::to_string(node.id) + " still mentions N");
}

// ---------------------------------------------------------------------------
// The prover main loop
// ---------------------------------------------------------------------------

ProverResult Prover::prove(const FormulaPtr& conjecture) {
  ProverResult res;
  ProofTree& tree = res.tree;

  MeasureCalc mcalc(rewriter_, delta_);

  {
    ProofNode root;
    root.id = 0;
    root.label = start(conjecture);
    root.via = RuleTag::Start;
    tree.nodes.push_back(std::move(root));
  }
  res.n_param = n_param_;

  struct StackEntry {
    int node;
    std::shared_ptr<BranchState> state;
  };
  std::vector<StackEntry> stack;
  stack.push_back({0, std::make_shared<BranchState>()});

  BaseSolver* solver = opts_.solver ? opts_.solver : &builtin_;
  long expanded = 0;
  bool done = false;

  while (!stack.empty() && !done) {
    StackEntry entry = std::move(stack.back());
    stack.pop_back();
    ProofNode& node = tree.nodes[entry.node];
    node.expanded = true;

    if (node.label.closed()) {
      node.closed = true;
      if (node.close_reason == ProofNode::CloseReason::None)
        node.close_reason = ProofNode::CloseReason::Bottom;
      continue;
    }
    if (++expanded > opts_.max_nodes) {
      res.verdict.kind = Verdict::Kind::ResourceLimit;
      res.verdict.nodes_expanded = expanded - 1;
      return res;
    }

    auto desc = find_rule(node.label, *entry.state);

    // Measure resolution point: the premise of the last checked rule must
    // strictly dominate once the forced decompositions are finished.
    if (opts_.check_measure && entry.state->pending && !and_or_applicable(node.label)) {
      Measure now = mcalc.measure(node.label, n_param_);
      if (!(now < *entry.state->pending))
        res.violations.push_back(
            "measure did not decrease at node " + std::to_string(node.id) + ": " +
            now.str() + " !< " + entry.state->pending->str());
      auto relaxed = std::make_shared<BranchState>(*entry.state);
      relaxed->pending.reset();
      entry.state = std::move(relaxed);
    }

    if (!desc) {
      node.layer = true;
      if (opts_.check_invariants) check_layer_invariants(node, res.violations);

      // Loop: compare against ancestor non-leaf layers, oldest first.
      bool looped = false;
      NodeLabel current = noneq(node.label);
      for (const auto& rec : entry.state->layers) {
        auto rho = find_subsuming_renaming(sig_, current, rec.noneq_label, n_param_);
        if (!rho) continue;
        if (rec.nexp >= node.nexp)
          res.violations.push_back("loop target " + std::to_string(rec.node) +
                                   " has nexp " + std::to_string(rec.nexp) +
                                   " >= " + std::to_string(node.nexp));
        ProofNode child;
        child.id = static_cast<int>(tree.nodes.size());
        child.parent = node.id;
        child.label = NodeLabel({f_false()});
        child.via = RuleTag::Loop;
        std::string detail = "subsumed by node " + std::to_string(rec.node);
        for (const auto& [from, to] : rho->pairs())
          detail += " " + sig_.symbol(from).name + "->" + sig_.symbol(to).name;
        child.via_detail = detail;
        child.closed = true;
        child.close_reason = ProofNode::CloseReason::LoopClosed;
        child.loop_target = rec.node;
        child.nexp = node.nexp;
        child.expanded = true;
        int cid = child.id;
        tree.nodes.push_back(std::move(child));
        tree.nodes[entry.node].children.push_back(cid);
        looped = true;
        break;
      }
      if (looped) continue;

      if (n_param_ >= 0 && params_of(node.label).count(n_param_)) {
        // N-Explosion: substitute over the whole label.
        TermPtr zero = make_const(sig_, sig_.nat_zero());
        TermPtr s0 = Term::app(sig_, sig_.nat_succ(), {zero});
        TermPtr sN = Term::app(sig_, sig_.nat_succ(), {n_term_});
        auto next_state = std::make_shared<BranchState>(*entry.state);
        next_state->layers.push_back({node.id, current, node.nexp});
        next_state->pending.reset();
        std::vector<NodeLabel> kids = {
            substitute_param(sig_, node.label, n_param_, s0),
            substitute_param(sig_, node.label, n_param_, sN)};
        int parent_id = node.id;
        int parent_nexp = node.nexp;
        std::vector<int> ids;
        for (auto& k : kids) {
          ProofNode child;
          child.id = static_cast<int>(tree.nodes.size());
          child.parent = parent_id;
          child.label = std::move(k);
          child.via = RuleTag::NExplosion;
          child.via_detail = ids.empty() ? "N := s(0)" : "N := s(N)";
          child.nexp = parent_nexp + 1;
          ids.push_back(child.id);
          tree.nodes.push_back(std::move(child));
          tree.nodes[parent_id].children.push_back(tree.nodes.back().id);
        }
        for (auto it = ids.rbegin(); it != ids.rend(); ++it)
          stack.push_back({*it, next_state});
        continue;
      }

      // Fully irreducible open leaf: hand NonEq(label) to the base solver.
      if (opts_.check_invariants) check_leaf_purity(node, res.violations);
      BaseProblem problem;
      for (const auto& f : current) problem.formulas.push_back(f);
      SolverResult sr = solver->solve(problem);
      switch (sr.kind) {
        case SolverResult::Kind::Sat:
          res.verdict.kind = Verdict::Kind::Sat;
          res.verdict.witness_leaf = node.id;
          res.verdict.base_model = std::move(sr.model);
          res.verdict.nodes_expanded = expanded;
          done = true;
          break;
        case SolverResult::Kind::Unsat:
          node.closed = true;
          node.close_reason = ProofNode::CloseReason::BaseUnsat;
          break;
        case SolverResult::Kind::Unsupported:
          res.verdict.kind = Verdict::Kind::Error;
          res.verdict.error = "base solver cannot decide leaf " +
                              std::to_string(node.id) + ": " + sr.reason;
          res.verdict.nodes_expanded = expanded;
          done = true;
          break;
      }
      continue;
    }

    // Apply the selected rule.
    std::vector<NodeLabel> kids = build_children(node.label, *desc);
    auto next_state = std::make_shared<BranchState>(*entry.state);
    if (!desc->sig_key.empty()) next_state->fired.insert(desc->sig_key);
    if (opts_.check_measure) {
      switch (desc->tag) {
        case RuleTag::Unfold:
        case RuleTag::NExplosion:
        case RuleTag::Loop:
          next_state->pending.reset();
          break;
        default: {
          Measure premise = mcalc.measure(node.label, n_param_);
          if (!next_state->pending || premise < *next_state->pending)
            next_state->pending = premise;
          break;
        }
      }
    }
    int parent_id = entry.node;
    int parent_nexp = tree.nodes[entry.node].nexp;
    std::vector<int> ids;
    for (auto& k : kids) {
      ProofNode child;
      child.id = static_cast<int>(tree.nodes.size());
      child.parent = parent_id;
      child.label = std::move(k);
      child.via = desc->tag;
      child.via_detail = desc->detail;
      child.nexp = parent_nexp;
      ids.push_back(child.id);
      tree.nodes.push_back(std::move(child));
      tree.nodes[parent_id].children.push_back(tree.nodes.back().id);
    }
    for (auto it = ids.rbegin(); it != ids.rend(); ++it)
      stack.push_back({*it, next_state});
  }

  if (!done) {
    res.verdict.kind = Verdict::Kind::Unsat;
    res.verdict.nodes_expanded = expanded;
  }
  return res;
}

}  // namespace schemata
