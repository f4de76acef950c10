#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schemata/symbols.hpp"

namespace schemata {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable sorted term: a variable or a symbol application. Symbol name
/// and kind are cached in the node so printing and classification never
/// need the signature.
class Term {
 public:
  enum class Kind : uint8_t { Var, App };

  Kind kind;
  SortId sort;

  // Var
  std::string var_name;

  // App
  SymbolId sym = -1;
  SymbolKind sym_kind = SymbolKind::BaseFunction;
  std::string sym_name;
  std::vector<TermPtr> args;

  bool has_var;  // any variable below

  static TermPtr var(std::string name, SortId sort);
  static TermPtr app(const Signature& sig, SymbolId sym, std::vector<TermPtr> args);

  bool is_var() const { return kind == Kind::Var; }
  bool is_app() const { return kind == Kind::App; }
  bool is_param() const {
    return kind == Kind::App && sym_kind == SymbolKind::Parameter;
  }
  bool is_constructor_app() const {
    return kind == Kind::App && sym_kind == SymbolKind::Constructor;
  }
  bool ground() const { return !has_var; }

 private:
  Term() = default;
};

int compare(const Term& a, const Term& b);
int compare(const TermPtr& a, const TermPtr& b);
bool equal(const TermPtr& a, const TermPtr& b);

std::string to_string(const Term& t);
inline std::string to_string(const TermPtr& t) { return to_string(*t); }

/// Shorthand for a 0-ary application (parameters, constant constructors).
TermPtr make_const(const Signature& sig, SymbolId sym);

/// Depth of a ground constructor term: constants have depth 1, values of a
/// non-inductive sort depth 0.
int constructor_depth(const Signature& sig, const TermPtr& t);

}  // namespace schemata
