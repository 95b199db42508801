#pragma once

#include <charconv>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "atmet/error.hpp"

namespace atmet {

enum class SymbolKind { And, Or, Label, Generic };

/// A function symbol together with its arity. Gate symbols are named
/// `AND_i` / `OR_i`; labels carry the basic attack step label as name.
struct Symbol {
  SymbolKind kind = SymbolKind::Generic;
  std::string name;
  std::size_t arity = 0;

  static Symbol gate_and(std::size_t arity) { return {SymbolKind::And, "AND_" + std::to_string(arity), arity}; }
  static Symbol gate_or(std::size_t arity) { return {SymbolKind::Or, "OR_" + std::to_string(arity), arity}; }
  static Symbol label(std::string name) { return {SymbolKind::Label, std::move(name), 0}; }

  bool is_gate() const { return kind == SymbolKind::And || kind == SymbolKind::Or; }
  bool is_label() const { return kind == SymbolKind::Label; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

namespace detail {

// Parses the numeric suffix of `AND_3`; gates need arity >= 1.
inline std::optional<std::size_t> gate_arity(std::string_view name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto digits = name.substr(prefix.size());
  if (digits.front() == '0') return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) return std::nullopt;
  return value;
}

}  // namespace detail

/// A single-sorted signature. Either a finite list of explicit symbols, or
/// the attack tree signature AT(B): gates AND_i / OR_i for all i >= 1 plus one
/// nullary label symbol per element of B.
class Signature {
 public:
  Signature() = default;

  static Signature attack_tree(std::set<std::string> labels) {
    Signature sig;
    sig.attack_tree_ = true;
    for (auto& l : labels) {
      if (detail::gate_arity(l, "AND_") || detail::gate_arity(l, "OR_")) {
        throw Error(ErrorKind::UnknownSymbol, "label '" + l + "' collides with a gate symbol name");
      }
    }
    sig.labels_ = std::move(labels);
    return sig;
  }

  static Signature generic(const std::vector<Symbol>& symbols) {
    Signature sig;
    for (const auto& s : symbols) {
      auto [it, inserted] = sig.generic_.emplace(s.name, s);
      if (!inserted) throw Error(ErrorKind::UnknownSymbol, "duplicate symbol name '" + s.name + "'");
    }
    return sig;
  }

  bool is_attack_tree() const { return attack_tree_; }
  const std::set<std::string>& labels() const { return labels_; }

  std::optional<Symbol> find(std::string_view name) const {
    if (attack_tree_) {
      if (auto n = detail::gate_arity(name, "AND_")) return Symbol::gate_and(*n);
      if (auto n = detail::gate_arity(name, "OR_")) return Symbol::gate_or(*n);
      if (auto it = labels_.find(std::string(name)); it != labels_.end()) return Symbol::label(*it);
      return std::nullopt;
    }
    if (auto it = generic_.find(std::string(name)); it != generic_.end()) return it->second;
    return std::nullopt;
  }

  Symbol lookup(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw Error(ErrorKind::UnknownSymbol, "symbol '" + std::string(name) + "' is not in the signature");
  }

  bool contains(const Symbol& s) const {
    auto found = find(s.name);
    return found && *found == s;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  bool attack_tree_ = false;
  std::set<std::string> labels_;
  std::map<std::string, Symbol, std::less<>> generic_;
};

}  // namespace atmet
