#pragma once

#include <memory>
#include <optional>

#include "schemata/basesolver.hpp"
#include "schemata/measure.hpp"

namespace schemata {

enum class RuleTag : uint8_t {
  Start,
  OrDec,
  AndDec,
  Closure,
  EqClosure,
  NClosure,
  Unfold,
  EqDec,
  DiseqDec,
  Replacement,
  Strictness,
  LtDec,
  LtSeparation,
  Separation,
  Explosion,
  NExplosion,
  Loop,
};
const char* rule_name(RuleTag tag);

struct ProofNode {
  enum class CloseReason : uint8_t { None, Bottom, LoopClosed, BaseUnsat };

  int id = -1;
  int parent = -1;
  std::vector<int> children;
  NodeLabel label;
  RuleTag via = RuleTag::Start;  // rule that produced this node
  std::string via_detail;
  bool closed = false;
  CloseReason close_reason = CloseReason::None;
  bool layer = false;
  bool expanded = false;
  int nexp = 0;        // N-Explosion applications from the root
  int loop_target = -1;  // LoopClosed: the subsuming ancestor layer
};

struct ProofTree {
  std::vector<ProofNode> nodes;
  const ProofNode& root() const { return nodes.front(); }
  long count_rule(RuleTag tag) const;
};

struct Verdict {
  enum class Kind { Sat, Unsat, ResourceLimit, Error } kind = Kind::Error;
  int witness_leaf = -1;                // Sat: first base-satisfiable leaf
  std::map<std::string, bool> base_model;  // Sat: abstracted-atom assignment
  long nodes_expanded = 0;
  std::string error;  // Error: e.g. the unsupported leaf formulae
};

struct ProverOptions {
  long max_nodes = 100000;
  bool check_measure = false;
  bool check_invariants = false;
  BaseSolver* solver = nullptr;  // null: built-in backend
};

struct ProverResult {
  Verdict verdict;
  ProofTree tree;
  std::vector<std::string> violations;  // measure/invariant check reports
  ParamId n_param = -1;
};

/// NonEq(Φ): the label minus all equations (disequations are retained).
NodeLabel noneq(const NodeLabel& label);

/// Searches ancestor layers (oldest first) for a sort-preserving renaming
/// rho, fixing the depth parameter, with rho(noneq(ancestor)) ⊆
/// noneq(current). Renamings need not be injective; candidates are
/// verified by applying them.
std::optional<Renaming> find_subsuming_renaming(const Signature& sig,
                                                const NodeLabel& current_noneq,
                                                const NodeLabel& ancestor_noneq,
                                                ParamId n_param);

/// The proof-tree engine for one problem. Owns a private copy of the
/// signature so Explosion can register fresh parameters.
class Prover {
 public:
  Prover(const Signature& sig, const RewriteSystem& rules, const DeltaTable& delta,
         ProverOptions options = {});

  /// Start-rule label: the conjecture plus the max-depth constraint over
  /// its inductive-sort parameters (omitted when there are none).
  NodeLabel start(const FormulaPtr& conjecture);

  /// True iff no rule other than N-Explosion and Loop applies to the
  /// label (with an empty branch history).
  bool is_layer(const NodeLabel& label) const;

  ProverResult prove(const FormulaPtr& conjecture);

  const Signature& signature() const { return sig_; }
  ParamId n_param() const { return n_param_; }
  const Rewriter& rewriter() const { return rewriter_; }

 private:
  struct BranchState;
  struct RuleDesc;

  std::optional<RuleDesc> find_rule(const NodeLabel& label, const BranchState& state) const;
  std::vector<NodeLabel> build_children(const NodeLabel& label, RuleDesc& desc);
  bool and_or_applicable(const NodeLabel& label) const;
  void check_layer_invariants(const ProofNode& node, std::vector<std::string>& out) const;
  void check_leaf_purity(const ProofNode& node, std::vector<std::string>& out) const;

  Signature sig_;
  const RewriteSystem& rules_;
  const DeltaTable& delta_;
  Rewriter rewriter_;
  ProverOptions opts_;
  ParamId n_param_ = -1;
  TermPtr n_term_;
  BuiltinSolver builtin_;
};

}  // namespace schemata
