#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace schemata {

/// Raised on broken internal contracts and malformed inputs that get past
/// the validators (sort clashes, unknown ids, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SortId = int32_t;
using SymbolId = int32_t;

enum class SymbolKind : uint8_t {
  Constructor,   // generates the values of an inductive sort
  BaseFunction,  // uninterpreted function/predicate of the base language
  Parameter,     // constant standing for an unknown constructor term
  Defined        // monadic symbol whose meaning is given by rewrite rules
};

struct SortDecl {
  std::string name;
  bool inductive = false;
};

struct SymbolDecl {
  std::string name;
  SymbolKind kind = SymbolKind::BaseFunction;
  std::vector<SortId> args;  // empty for constants and parameters
  SortId result = -1;        // for Defined symbols: the index sort
};

/// The problem vocabulary. `bool`, `nat`, `0` and `s` are predeclared.
/// Append-only: ids handed out stay valid when the prover registers fresh
/// parameters on its own copy.
class Signature {
 public:
  Signature();

  SortId add_sort(const std::string& name, bool inductive);
  SymbolId add_symbol(SymbolDecl d);

  /// Registers a parameter named after `base`, suffixed if needed to stay
  /// unique within the signature.
  SymbolId fresh_parameter(const std::string& base, SortId sort);

  std::optional<SortId> find_sort(const std::string& name) const;
  std::optional<SymbolId> find_symbol(const std::string& name) const;

  const SortDecl& sort(SortId id) const { return sorts_.at(id); }
  const SymbolDecl& symbol(SymbolId id) const { return symbols_.at(id); }
  size_t num_sorts() const { return sorts_.size(); }
  size_t num_symbols() const { return symbols_.size(); }

  std::vector<SymbolId> constructors_of(SortId sort) const;

  bool is_inductive(SortId id) const { return sorts_.at(id).inductive; }

  SortId bool_sort() const { return bool_sort_; }
  SortId nat_sort() const { return nat_sort_; }
  SymbolId nat_zero() const { return nat_zero_; }
  SymbolId nat_succ() const { return nat_succ_; }

  /// Maximal arity over all declared function symbols (the `a` of the
  /// termination measure); at least 1 because of `s`.
  int max_arity() const;

 private:
  std::vector<SortDecl> sorts_;
  std::vector<SymbolDecl> symbols_;
  std::unordered_map<std::string, SortId> sort_names_;
  std::unordered_map<std::string, SymbolId> symbol_names_;
  SortId bool_sort_ = -1;
  SortId nat_sort_ = -1;
  SymbolId nat_zero_ = -1;
  SymbolId nat_succ_ = -1;
};

}  // namespace schemata
