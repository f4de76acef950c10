#include "schemata/basesolver.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace schemata {

std::optional<std::map<int, bool>> dpll(const std::vector<Clause>& clauses) {
  std::vector<int> vars;
  for (const auto& c : clauses)
    for (Lit l : c) vars.push_back(std::abs(l));
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  std::map<int, bool> assignment;

  std::function<bool(std::vector<Clause>)> solve = [&](std::vector<Clause> cs) -> bool {
    // Unit propagation.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : cs) {
        if (c.empty()) return false;
        if (c.size() != 1) continue;
        Lit unit = c[0];
        assignment[std::abs(unit)] = unit > 0;
        std::vector<Clause> next;
        for (const auto& d : cs) {
          if (std::find(d.begin(), d.end(), unit) != d.end()) continue;
          Clause nd;
          for (Lit l : d)
            if (l != -unit) nd.push_back(l);
          next.push_back(std::move(nd));
        }
        cs = std::move(next);
        changed = true;
        break;
      }
    }
    if (cs.empty()) return true;
    for (const auto& c : cs)
      if (c.empty()) return false;
    // Branch on the lowest-index literal variable, true first.
    int v = 0;
    for (const auto& c : cs)
      for (Lit l : c)
        if (v == 0 || std::abs(l) < v) v = std::abs(l);
    for (bool value : {true, false}) {
      auto saved = assignment;
      std::vector<Clause> cs2 = cs;
      cs2.push_back({value ? v : -v});
      if (solve(std::move(cs2))) return true;
      assignment = std::move(saved);
    }
    return false;
  };

  if (!solve(clauses)) return std::nullopt;
  for (int v : vars)
    if (!assignment.count(v)) assignment[v] = false;
  return assignment;
}

int Clausifier::atom(const std::string& key) {
  auto it = atom_vars.find(key);
  if (it != atom_vars.end()) return it->second;
  int v = next_var++;
  atom_vars.emplace(key, v);
  return v;
}

namespace {

// Compiles an NNF base formula to a literal over clausifier variables,
// emitting defining clauses for compounds. Returns 0 for "true" and a
// sentinel via `constant` for constants.
struct Compile {
  Clausifier& cl;
  std::string* unsupported;

  // Returns a literal equivalent (for satisfiability) to the formula, or
  // nullopt with `constant` set when the formula is a constant.
  std::optional<Lit> run(const FormulaPtr& f, bool* constant_value, bool* is_constant) {
    *is_constant = false;
    switch (f->kind) {
      case FKind::True:
        *is_constant = true;
        *constant_value = true;
        return std::nullopt;
      case FKind::False:
        *is_constant = true;
        *constant_value = false;
        return std::nullopt;
      case FKind::BaseLit: {
        if (f->rhs) {
          if (!(f->lhs->is_param() && f->rhs->is_param())) {
            if (unsupported->empty()) *unsupported = to_string(*f);
            *is_constant = true;
            *constant_value = false;
            return std::nullopt;
          }
          // Parameter (dis)equation as a base atom: distinct parameters
          // denote distinct values.
          bool same = equal(f->lhs, f->rhs);
          *is_constant = true;
          *constant_value = f->positive ? same : !same;
          return std::nullopt;
        }
        Lit v = cl.atom(to_string(f->lhs));
        return f->positive ? v : -v;
      }
      case FKind::Diseq: {
        if (f->lhs->is_param() && f->rhs->is_param()) {
          *is_constant = true;
          *constant_value = !equal(f->lhs, f->rhs);
          return std::nullopt;
        }
        if (unsupported->empty()) *unsupported = to_string(*f);
        *is_constant = true;
        *constant_value = false;
        return std::nullopt;
      }
      case FKind::Eq:
      case FKind::DefinedLit:
      case FKind::DepthAtom:
      case FKind::Quantified:
      case FKind::Not:
      case FKind::Implies:
        if (unsupported->empty()) *unsupported = to_string(*f);
        *is_constant = true;
        *constant_value = false;
        return std::nullopt;
      case FKind::And:
      case FKind::Or: {
        bool conj = f->kind == FKind::And;
        std::vector<Lit> lits;
        for (const auto& c : f->children) {
          bool cv = false, cc = false;
          auto l = run(c, &cv, &cc);
          if (cc) {
            if (conj && !cv) {
              *is_constant = true;
              *constant_value = false;
              return std::nullopt;
            }
            if (!conj && cv) {
              *is_constant = true;
              *constant_value = true;
              return std::nullopt;
            }
            continue;  // neutral child
          }
          lits.push_back(*l);
        }
        if (lits.empty()) {
          *is_constant = true;
          *constant_value = conj;
          return std::nullopt;
        }
        if (lits.size() == 1) return lits[0];
        int x = cl.aux();
        if (conj) {
          // x -> l_i
          for (Lit l : lits) cl.clauses.push_back({-x, l});
        } else {
          // x -> l_1 ∨ ... ∨ l_k
          Clause c{-x};
          c.insert(c.end(), lits.begin(), lits.end());
          cl.clauses.push_back(std::move(c));
        }
        return x;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SolverResult BuiltinSolver::solve(const BaseProblem& problem) {
  Clausifier cl;
  std::string unsupported;
  Compile compile{cl, &unsupported};
  for (const auto& f : problem.formulas) {
    bool cv = false, cc = false;
    auto l = compile.run(f, &cv, &cc);
    if (!unsupported.empty()) return SolverResult::unsupported(unsupported);
    if (cc) {
      if (!cv) return SolverResult::unsat();
      continue;
    }
    cl.clauses.push_back({*l});
  }
  auto model = dpll(cl.clauses);
  if (!model) return SolverResult::unsat();
  std::map<std::string, bool> assignment;
  for (const auto& [key, var] : cl.atom_vars) {
    auto it = model->find(var);
    assignment[key] = it != model->end() ? it->second : false;
  }
  return SolverResult::sat(std::move(assignment));
}

SolverResult solve_base(const BaseProblem& problem) {
  BuiltinSolver s;
  return s.solve(problem);
}

SolverResult BridgeSolver::solve(const BaseProblem& problem) {
  char path[] = "/tmp/schemata_bridge_XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) return SolverResult::unsupported("bridge: cannot create temp file");
  close(fd);
  {
    std::ofstream out(path);
    for (const auto& f : problem.formulas) out << to_string(*f) << "\n";
  }
  std::string cmd = command_ + " " + path;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::remove(path);
    return SolverResult::unsupported("bridge: cannot run " + command_);
  }
  char buf[256] = {0};
  std::string line;
  if (fgets(buf, sizeof buf, pipe)) line = buf;
  pclose(pipe);
  std::remove(path);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  if (line == "sat") return SolverResult::sat({});
  if (line == "unsat") return SolverResult::unsat();
  return SolverResult::unsupported("bridge answered '" + line + "'");
}

}  // namespace schemata
