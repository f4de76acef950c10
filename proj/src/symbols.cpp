#include "schemata/symbols.hpp"

namespace schemata {

Signature::Signature() {
  bool_sort_ = add_sort("bool", false);
  nat_sort_ = add_sort("nat", true);
  nat_zero_ = add_symbol({"0", SymbolKind::Constructor, {}, nat_sort_});
  nat_succ_ = add_symbol({"s", SymbolKind::Constructor, {nat_sort_}, nat_sort_});
}

SortId Signature::add_sort(const std::string& name, bool inductive) {
  if (sort_names_.count(name)) throw Error("duplicate sort: " + name);
  SortId id = static_cast<SortId>(sorts_.size());
  sorts_.push_back({name, inductive});
  sort_names_.emplace(name, id);
  return id;
}

SymbolId Signature::add_symbol(SymbolDecl d) {
  if (symbol_names_.count(d.name)) throw Error("duplicate symbol: " + d.name);
  if (d.result < 0 || d.result >= static_cast<SortId>(sorts_.size()))
    throw Error("unknown result sort for symbol: " + d.name);
  for (SortId a : d.args)
    if (a < 0 || a >= static_cast<SortId>(sorts_.size()))
      throw Error("unknown argument sort for symbol: " + d.name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbol_names_.emplace(d.name, id);
  symbols_.push_back(std::move(d));
  return id;
}

SymbolId Signature::fresh_parameter(const std::string& base, SortId sort) {
  std::string name = base;
  int counter = 0;
  while (symbol_names_.count(name)) name = base + std::to_string(++counter);
  return add_symbol({name, SymbolKind::Parameter, {}, sort});
}

std::optional<SortId> Signature::find_sort(const std::string& name) const {
  auto it = sort_names_.find(name);
  if (it == sort_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> Signature::find_symbol(const std::string& name) const {
  auto it = symbol_names_.find(name);
  if (it == symbol_names_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymbolId> Signature::constructors_of(SortId sort) const {
  std::vector<SymbolId> out;
  for (SymbolId i = 0; i < static_cast<SymbolId>(symbols_.size()); ++i) {
    const auto& s = symbols_[i];
    if (s.kind == SymbolKind::Constructor && s.result == sort) out.push_back(i);
  }
  return out;
}

int Signature::max_arity() const {
  size_t a = 1;
  for (const auto& s : symbols_)
    if (s.kind != SymbolKind::Defined) a = std::max(a, s.args.size());
  return static_cast<int>(a);
}

}  // namespace schemata
