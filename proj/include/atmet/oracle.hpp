#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atmet/function_semantics.hpp"
#include "atmet/matrix_semantics.hpp"
#include "atmet/semiring.hpp"
#include "atmet/term_graph.hpp"

// Brute-force reference implementations. Deliberately naive: everything is
// computed by enumerating attacks and evaluating the structure function.
namespace atmet::oracle {

inline constexpr std::size_t kEnumerationCap = 20;

/// Which basic attack step nodes are performed.
using Attack = std::map<NodeId, bool>;

/// Non-input nodes labelled by a label symbol, in NodeId order.
inline std::vector<NodeId> bas_nodes(const TermGraph& t) {
  std::vector<NodeId> out;
  for (const auto& [n, nd] : t.node_map()) {
    if (nd.symbol && nd.symbol->is_label()) out.push_back(n);
  }
  return out;
}

namespace detail {

inline bool node_value(const TermGraph& t, NodeId n, const Attack& a, const std::vector<bool>& x,
                       std::map<NodeId, bool>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  bool v = false;
  if (t.is_input(n)) {
    v = x.at(*t.input_position(n));
  } else {
    const Symbol& s = *t.symbol(n);
    switch (s.kind) {
      case SymbolKind::Label: v = a.at(n); break;
      case SymbolKind::And:
        v = true;
        for (NodeId c : t.children(n)) v = node_value(t, c, a, x, memo) && v;
        break;
      case SymbolKind::Or:
        v = false;
        for (NodeId c : t.children(n)) v = node_value(t, c, a, x, memo) || v;
        break;
      case SymbolKind::Generic:
        throw Error(ErrorKind::MissingSymbol, "no Boolean meaning for symbol '" + s.name + "'");
    }
  }
  memo.emplace(n, v);
  return v;
}

inline void check_cap(std::size_t n_bas, std::size_t cap) {
  if (n_bas > cap) {
    throw Error(ErrorKind::EnumerationCapExceeded, std::to_string(n_bas) + " basic attack steps exceed the cap of " +
                                                       std::to_string(cap));
  }
}

// Calls visit(a) for every attack on `bas`, binary-counter order with the
// first node most significant.
template <class Fn>
void for_each_attack(const std::vector<NodeId>& bas, Fn&& visit) {
  const std::uint64_t total = std::uint64_t{1} << bas.size();
  Attack a;
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t k = 0; k < bas.size(); ++k) a[bas[k]] = (code >> (bas.size() - 1 - k)) & 1U;
    visit(a);
  }
}

inline std::size_t bits_to_index(const std::vector<bool>& bits) {
  std::size_t v = 0;
  for (bool b : bits) v = (v << 1) | (b ? 1U : 0U);
  return v;
}

inline std::vector<bool> index_to_bits(std::size_t v, std::size_t width) {
  std::vector<bool> bits(width);
  for (std::size_t k = 0; k < width; ++k) bits[k] = (v >> (width - 1 - k)) & 1U;
  return bits;
}

inline const std::string& label_of(const TermGraph& t, NodeId n) { return t.symbol(n)->name; }

}  // namespace detail

/// Output bits of `t` on input bits `x` when exactly the steps with a(v) = 1
/// are performed.
inline std::vector<bool> structure_function(const TermGraph& t, const Attack& a, const std::vector<bool>& x) {
  if (x.size() != t.inputs().size()) {
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(t.inputs().size()) + " input bits");
  }
  std::map<NodeId, bool> memo;
  std::vector<bool> out;
  for (NodeId o : t.outputs()) out.push_back(detail::node_value(t, o, a, x, memo));
  return out;
}

/// Label set of the performed steps.
inline AttackSet performed_labels(const TermGraph& t, const Attack& a) {
  AttackSet out;
  for (const auto& [n, on] : a) {
    if (on) out.insert(detail::label_of(t, n));
  }
  return out;
}

/// Attacks a with structure_function(t, a) = (1).
inline std::vector<Attack> suc(const TermGraph& t, std::size_t cap = kEnumerationCap) {
  require_attack_tree(t);
  const auto bas = bas_nodes(t);
  detail::check_cap(bas.size(), cap);
  std::vector<Attack> out;
  detail::for_each_attack(bas, [&](const Attack& a) {
    if (structure_function(t, a, {}).front()) out.push_back(a);
  });
  return out;
}

/// Successful attacks with no successful proper sub-attack.
inline std::vector<Attack> minsuc_attacks(const TermGraph& t, std::size_t cap = kEnumerationCap) {
  const auto all = suc(t, cap);
  auto below = [](const Attack& a, const Attack& b) {
    bool strict = false;
    for (const auto& [n, on] : a) {
      if (on && !b.at(n)) return false;
      if (!on && b.at(n)) strict = true;
    }
    return strict;
  };
  std::vector<Attack> out;
  for (const auto& a : all) {
    bool minimal = true;
    for (const auto& b : all) {
      if (below(b, a)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(a);
  }
  return out;
}

/// Minimal successful attacks as label sets.
inline Antichain minsuc(const TermGraph& t, std::size_t cap = kEnumerationCap) {
  std::set<AttackSet> sets;
  for (const auto& a : minsuc_attacks(t, cap)) sets.insert(performed_labels(t, a));
  return antichain_normalize(sets);
}

/// M[y][x] = sum over attacks a with S_T(a, x) = y of
/// prod_{a(v)=1} alpha1(v) * prod_{a(v)=0} alpha0(v).
template <Semiring S>
BoolMatrix<typename S::value_type> matrix_by_formula(const TermGraph& t, const S& sr,
                                                     const BasWeights<typename S::value_type>& w,
                                                     std::size_t cap = kEnumerationCap) {
  const auto bas = bas_nodes(t);
  detail::check_cap(bas.size(), cap);
  const std::size_t i = t.inputs().size(), j = t.outputs().size();
  BoolMatrix<typename S::value_type> m(i, j, sr.zero());
  auto weight = [&](const std::map<std::string, typename S::value_type>& table, NodeId v) {
    auto it = table.find(detail::label_of(t, v));
    if (it == table.end()) throw Error(ErrorKind::MissingLabel, "no weight for label '" + detail::label_of(t, v) + "'");
    return it->second;
  };
  detail::for_each_attack(bas, [&](const Attack& a) {
    auto p = sr.one();
    for (NodeId v : bas) p = sr.times(p, a.at(v) ? weight(w.alpha1, v) : weight(w.alpha0, v));
    for (std::size_t x = 0; x < m.cols(); ++x) {
      const std::size_t y = detail::bits_to_index(structure_function(t, a, detail::index_to_bits(x, i)));
      m.at(y, x) = sr.plus(m.at(y, x), p);
    }
  });
  return m;
}

namespace detail {

template <Semiring S>
typename S::value_type attack_product(const TermGraph& t, const S& sr, const Attribution<S>& alpha, const Attack& a) {
  auto p = sr.one();
  for (const auto& [v, on] : a) {
    if (!on) continue;
    auto it = alpha.find(label_of(t, v));
    if (it == alpha.end()) throw Error(ErrorKind::MissingLabel, "no attribution for label '" + label_of(t, v) + "'");
    p = sr.times(p, it->second);
  }
  return p;
}

}  // namespace detail

/// Sum over minimal successful attacks of the product of alpha over performed steps.
template <Semiring S>
typename S::value_type prop_metric_by_formula(const TermGraph& t, const S& sr, const Attribution<S>& alpha,
                                              std::size_t cap = kEnumerationCap) {
  auto acc = sr.zero();
  for (const auto& a : minsuc_attacks(t, cap)) acc = sr.plus(acc, detail::attack_product(t, sr, alpha, a));
  return acc;
}

/// The same sum taken over all successful attacks.
template <Semiring S>
typename S::value_type suc_metric_by_formula(const TermGraph& t, const S& sr, const Attribution<S>& alpha,
                                             std::size_t cap = kEnumerationCap) {
  auto acc = sr.zero();
  for (const auto& a : suc(t, cap)) acc = sr.plus(acc, detail::attack_product(t, sr, alpha, a));
  return acc;
}

/// Probability that the tree's goal is reached when step v happens
/// independently with probability p(label(v)).
inline double unreliability_by_enumeration(const TermGraph& t, const std::map<std::string, double>& p,
                                           std::size_t cap = kEnumerationCap) {
  double total = 0;
  for (const auto& a : suc(t, cap)) {
    double q = 1;
    for (const auto& [v, on] : a) {
      auto it = p.find(detail::label_of(t, v));
      if (it == p.end()) throw Error(ErrorKind::MissingLabel, "no probability for label '" + detail::label_of(t, v) + "'");
      q *= on ? it->second : 1.0 - it->second;
    }
    total += q;
  }
  return total;
}

}  // namespace atmet::oracle
