#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atmet/error.hpp"
#include "atmet/signature.hpp"

namespace atmet {

/// Opaque node identifier, unique within one term graph.
struct NodeId {
  std::uint32_t value = 0;

  friend bool operator==(NodeId, NodeId) = default;
  friend auto operator<=>(NodeId, NodeId) = default;
};

inline std::string to_string(NodeId n) { return "#" + std::to_string(n.value); }

/// Number of input and output wires, written `i -> j`.
struct Arity {
  std::size_t inputs = 0;
  std::size_t outputs = 0;

  friend bool operator==(const Arity&, const Arity&) = default;
};

inline std::string to_string(const Arity& a) {
  return std::to_string(a.inputs) + "->" + std::to_string(a.outputs);
}

/// A term graph: an acyclic graph with ordered input and output lists. Input
/// nodes carry no symbol; every other node carries a symbol whose arity equals
/// the length of its ordered child list. The output list may repeat nodes.
///
/// Values are immutable once constructed and every constructor validates.
class TermGraph {
 public:
  struct Node {
    std::optional<Symbol> symbol;  // empty for input nodes
    std::vector<NodeId> children;
  };

  TermGraph() : TermGraph(std::make_shared<const Signature>(), {}, {}, {}) {}

  const Signature& signature() const { return *signature_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return signature_; }

  Arity arity() const { return {inputs_.size(), outputs_.size()}; }
  const std::vector<NodeId>& inputs() const { return inputs_; }
  const std::vector<NodeId>& outputs() const { return outputs_; }
  std::size_t node_count() const { return nodes_.size(); }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) out.push_back(id);
    return out;
  }

  bool contains(NodeId n) const { return nodes_.count(n) != 0; }
  bool is_input(NodeId n) const { return !node(n).symbol.has_value(); }
  const std::optional<Symbol>& symbol(NodeId n) const { return node(n).symbol; }
  const std::vector<NodeId>& children(NodeId n) const { return node(n).children; }
  const std::map<NodeId, Node>& node_map() const { return nodes_; }

  /// Position of `n` in the input list, if it is an input.
  std::optional<std::size_t> input_position(NodeId n) const {
    auto it = std::find(inputs_.begin(), inputs_.end(), n);
    if (it == inputs_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - inputs_.begin());
  }

  const Node& node(NodeId n) const {
    auto it = nodes_.find(n);
    if (it == nodes_.end()) throw Error(ErrorKind::DanglingReference, "node " + to_string(n) + " not in graph");
    return it->second;
  }

 private:
  TermGraph(std::shared_ptr<const Signature> sig, std::map<NodeId, Node> nodes,
            std::vector<NodeId> inputs, std::vector<NodeId> outputs)
      : signature_(std::move(sig)),
        nodes_(std::move(nodes)),
        inputs_(std::move(inputs)),
        outputs_(std::move(outputs)) {
    validate();
  }

  void validate() const;

  friend TermGraph make_term_graph(const std::vector<NodeId>&, const std::vector<NodeId>&,
                                   const std::vector<NodeId>&, const std::map<NodeId, std::string>&,
                                   const std::map<NodeId, std::vector<NodeId>>&, const Signature&);
  friend TermGraph detail_build(std::shared_ptr<const Signature>, std::map<NodeId, Node>,
                                std::vector<NodeId>, std::vector<NodeId>);

  std::shared_ptr<const Signature> signature_;
  std::map<NodeId, Node> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
};

inline TermGraph detail_build(std::shared_ptr<const Signature> sig, std::map<NodeId, TermGraph::Node> nodes,
                              std::vector<NodeId> inputs, std::vector<NodeId> outputs) {
  return TermGraph(std::move(sig), std::move(nodes), std::move(inputs), std::move(outputs));
}

inline void TermGraph::validate() const {
  std::set<NodeId> seen_inputs;
  for (NodeId n : inputs_) {
    if (!contains(n)) throw Error(ErrorKind::DanglingReference, "input " + to_string(n) + " is not a node");
    if (!seen_inputs.insert(n).second) {
      throw Error(ErrorKind::DuplicateInput, "node " + to_string(n) + " appears twice in the input list");
    }
  }
  for (NodeId n : outputs_) {
    if (!contains(n)) throw Error(ErrorKind::DanglingReference, "output " + to_string(n) + " is not a node");
  }
  for (const auto& [id, nd] : nodes_) {
    const bool input = seen_inputs.count(id) != 0;
    if (input) {
      if (nd.symbol || !nd.children.empty()) {
        throw Error(ErrorKind::LabelOnInput, "input node " + to_string(id) + " carries a label or children");
      }
      continue;
    }
    if (!nd.symbol) throw Error(ErrorKind::MissingLabel, "non-input node " + to_string(id) + " has no label");
    if (!signature_->contains(*nd.symbol)) {
      throw Error(ErrorKind::UnknownSymbol,
                  "node " + to_string(id) + " uses symbol '" + nd.symbol->name + "' not in the signature");
    }
    if (nd.symbol->arity != nd.children.size()) {
      throw Error(ErrorKind::ArityMismatch, "node " + to_string(id) + " labelled " + nd.symbol->name + " has " +
                                                std::to_string(nd.children.size()) + " children, expected " +
                                                std::to_string(nd.symbol->arity));
    }
    for (NodeId c : nd.children) {
      if (!contains(c)) {
        throw Error(ErrorKind::DanglingReference, "node " + to_string(id) + " has unknown child " + to_string(c));
      }
    }
  }
  // Iterative three-colour DFS for acyclicity.
  std::map<NodeId, int> colour;
  for (const auto& [root, _] : nodes_) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      const auto& ch = nodes_.at(n).children;
      if (next == ch.size()) {
        colour[n] = 2;
        stack.pop_back();
        continue;
      }
      NodeId c = ch[next++];
      int& cc = colour[c];
      if (cc == 1) throw Error(ErrorKind::CycleDetected, "cycle through node " + to_string(c));
      if (cc == 0) {
        cc = 1;
        stack.emplace_back(c, 0);
      }
    }
  }
}

/// Builds and validates a term graph from raw components. `labels` maps every
/// non-input node to a symbol name of `signature`; a missing `children` entry
/// means an empty child list.
inline TermGraph make_term_graph(const std::vector<NodeId>& nodes, const std::vector<NodeId>& inputs,
                                 const std::vector<NodeId>& outputs, const std::map<NodeId, std::string>& labels,
                                 const std::map<NodeId, std::vector<NodeId>>& children,
                                 const Signature& signature) {
  std::map<NodeId, TermGraph::Node> table;
  for (NodeId n : nodes) {
    if (!table.emplace(n, TermGraph::Node{}).second) {
      throw Error(ErrorKind::DuplicateNodeDecl, "node " + to_string(n) + " listed twice");
    }
  }
  std::set<NodeId> input_set(inputs.begin(), inputs.end());
  for (const auto& [n, name] : labels) {
    auto it = table.find(n);
    if (it == table.end()) throw Error(ErrorKind::DanglingReference, "label on unknown node " + to_string(n));
    if (input_set.count(n)) throw Error(ErrorKind::LabelOnInput, "input node " + to_string(n) + " is labelled");
    it->second.symbol = signature.lookup(name);
  }
  for (const auto& [n, ch] : children) {
    auto it = table.find(n);
    if (it == table.end()) throw Error(ErrorKind::DanglingReference, "children of unknown node " + to_string(n));
    if (input_set.count(n)) throw Error(ErrorKind::LabelOnInput, "input node " + to_string(n) + " has children");
    it->second.children = ch;
  }
  return TermGraph(std::make_shared<const Signature>(signature), std::move(table), inputs, outputs);
}

namespace detail {

// Maps the sorted node ids of `g` onto offset, offset+1, ...
inline std::map<NodeId, NodeId> dense_renumbering(const TermGraph& g, std::uint32_t offset) {
  std::map<NodeId, NodeId> out;
  for (const auto& [id, _] : g.node_map()) out.emplace(id, NodeId{offset++});
  return out;
}

inline std::vector<NodeId> map_list(const std::vector<NodeId>& list, const std::map<NodeId, NodeId>& f) {
  std::vector<NodeId> out;
  out.reserve(list.size());
  for (NodeId n : list) out.push_back(f.at(n));
  return out;
}

inline bool is_pure_wiring(const TermGraph& g) {
  return std::all_of(g.node_map().begin(), g.node_map().end(),
                     [](const auto& kv) { return !kv.second.symbol.has_value(); });
}

// Graphs without labelled nodes (identities, swaps, copy, del) belong to every
// signature, so they adopt the signature of the other operand.
inline std::shared_ptr<const Signature> common_signature(const TermGraph& a, const TermGraph& b) {
  if (a.signature_ptr() == b.signature_ptr() || a.signature() == b.signature()) return a.signature_ptr();
  if (is_pure_wiring(a)) return b.signature_ptr();
  if (is_pure_wiring(b)) return a.signature_ptr();
  throw Error(ErrorKind::ArityMismatch, "term graphs are over different signatures");
}

}  // namespace detail

/// Sequential composite `second ∘ first`: the l-th output of `first` is glued
/// to the l-th input of `second`. Nodes are renumbered densely with the nodes
/// of `first` before the remaining nodes of `second`.
inline TermGraph seq_compose(const TermGraph& first, const TermGraph& second) {
  auto sig = detail::common_signature(first, second);
  if (first.arity().outputs != second.arity().inputs) {
    throw Error(ErrorKind::ArityMismatch, "cannot compose " + to_string(first.arity()) + " with " +
                                              to_string(second.arity()));
  }
  // Every input node of `second` is glued to exactly one node of `first`, so
  // each quotient class holds one node of `first` (its minimum representative)
  // or is a singleton non-input node of `second`.
  auto f_ids = detail::dense_renumbering(first, 0);
  std::map<NodeId, NodeId> s_ids;
  for (std::size_t l = 0; l < second.inputs().size(); ++l) {
    s_ids.emplace(second.inputs()[l], f_ids.at(first.outputs()[l]));
  }
  auto next = static_cast<std::uint32_t>(first.node_count());
  for (const auto& [id, _] : second.node_map()) {
    if (!s_ids.count(id)) s_ids.emplace(id, NodeId{next++});
  }

  std::map<NodeId, TermGraph::Node> table;
  for (const auto& [id, nd] : first.node_map()) {
    table[f_ids.at(id)] = {nd.symbol, detail::map_list(nd.children, f_ids)};
  }
  for (const auto& [id, nd] : second.node_map()) {
    if (!nd.symbol) continue;
    table[s_ids.at(id)] = {nd.symbol, detail::map_list(nd.children, s_ids)};
  }
  return detail_build(sig, std::move(table), detail::map_list(first.inputs(), f_ids),
                      detail::map_list(second.outputs(), s_ids));
}

/// Parallel composite with the wires of `left` first: inputs are
/// in(left)·in(right) and outputs out(left)·out(right).
inline TermGraph par_compose(const TermGraph& left, const TermGraph& right) {
  auto sig = detail::common_signature(left, right);
  auto l_ids = detail::dense_renumbering(left, 0);
  auto r_ids = detail::dense_renumbering(right, static_cast<std::uint32_t>(left.node_count()));
  std::map<NodeId, TermGraph::Node> table;
  for (const auto& [id, nd] : left.node_map()) table[l_ids.at(id)] = {nd.symbol, detail::map_list(nd.children, l_ids)};
  for (const auto& [id, nd] : right.node_map()) table[r_ids.at(id)] = {nd.symbol, detail::map_list(nd.children, r_ids)};
  auto inputs = detail::map_list(left.inputs(), l_ids);
  auto r_in = detail::map_list(right.inputs(), r_ids);
  inputs.insert(inputs.end(), r_in.begin(), r_in.end());
  auto outputs = detail::map_list(left.outputs(), l_ids);
  auto r_out = detail::map_list(right.outputs(), r_ids);
  outputs.insert(outputs.end(), r_out.begin(), r_out.end());
  return detail_build(sig, std::move(table), std::move(inputs), std::move(outputs));
}

enum class AtomKind { Id0, Id1, Copy, Del, Swap, Symbol };

/// Descriptor of an atomic term graph.
struct Atom {
  AtomKind kind = AtomKind::Id1;
  std::optional<Symbol> symbol;  // set iff kind == Symbol

  static Atom id0() { return {AtomKind::Id0, std::nullopt}; }
  static Atom id1() { return {AtomKind::Id1, std::nullopt}; }
  static Atom copy() { return {AtomKind::Copy, std::nullopt}; }
  static Atom del() { return {AtomKind::Del, std::nullopt}; }
  static Atom swap() { return {AtomKind::Swap, std::nullopt}; }
  static Atom of(Symbol s) { return {AtomKind::Symbol, std::move(s)}; }

  Arity arity() const {
    switch (kind) {
      case AtomKind::Id0: return {0, 0};
      case AtomKind::Id1: return {1, 1};
      case AtomKind::Copy: return {1, 2};
      case AtomKind::Del: return {1, 0};
      case AtomKind::Swap: return {2, 2};
      case AtomKind::Symbol: return {symbol->arity, 1};
    }
    return {};
  }

  std::string name() const {
    switch (kind) {
      case AtomKind::Id0: return "id0";
      case AtomKind::Id1: return "id1";
      case AtomKind::Copy: return "copy";
      case AtomKind::Del: return "del";
      case AtomKind::Swap: return "swap";
      case AtomKind::Symbol: return symbol->name;
    }
    return {};
  }

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// The canonical atomic term graph for `atom`.
inline TermGraph atomic(const Atom& atom, const Signature& signature) {
  auto sig = std::make_shared<const Signature>(signature);
  using Node = TermGraph::Node;
  const NodeId n0{0}, n1{1};
  switch (atom.kind) {
    case AtomKind::Id0: return detail_build(sig, {}, {}, {});
    case AtomKind::Id1: return detail_build(sig, {{n0, Node{}}}, {n0}, {n0});
    case AtomKind::Copy: return detail_build(sig, {{n0, Node{}}}, {n0}, {n0, n0});
    case AtomKind::Del: return detail_build(sig, {{n0, Node{}}}, {n0}, {});
    case AtomKind::Swap: return detail_build(sig, {{n0, Node{}}, {n1, Node{}}}, {n0, n1}, {n1, n0});
    case AtomKind::Symbol: {
      if (!atom.symbol || !signature.contains(*atom.symbol)) {
        throw Error(ErrorKind::UnknownSymbol,
                    "symbol '" + (atom.symbol ? atom.symbol->name : std::string("?")) + "' is not in the signature");
      }
      std::map<NodeId, Node> table;
      std::vector<NodeId> inputs;
      const auto k = static_cast<std::uint32_t>(atom.symbol->arity);
      for (std::uint32_t i = 0; i < k; ++i) {
        table[NodeId{i}] = Node{};
        inputs.push_back(NodeId{i});
      }
      table[NodeId{k}] = Node{atom.symbol, inputs};
      return detail_build(sig, std::move(table), inputs, {NodeId{k}});
    }
  }
  throw Error(ErrorKind::UnknownSymbol, "unknown atom kind");
}

inline TermGraph atomic(const Symbol& symbol, const Signature& signature) {
  return atomic(Atom::of(symbol), signature);
}

/// Identity term graph n -> n (n-fold parallel composite of id1).
inline TermGraph identity(std::size_t n, const Signature& signature = {}) {
  std::map<NodeId, TermGraph::Node> table;
  std::vector<NodeId> wires;
  for (std::uint32_t i = 0; i < n; ++i) {
    table[NodeId{i}] = {};
    wires.push_back(NodeId{i});
  }
  return detail_build(std::make_shared<const Signature>(signature), std::move(table), wires, wires);
}

/// (i+j) -> (i+j) wiring that moves the first i wires after the last j.
inline TermGraph swap_block(std::size_t i, std::size_t j, const Signature& signature = {}) {
  std::map<NodeId, TermGraph::Node> table;
  std::vector<NodeId> inputs, outputs;
  for (std::uint32_t k = 0; k < i + j; ++k) {
    table[NodeId{k}] = {};
    inputs.push_back(NodeId{k});
  }
  outputs.insert(outputs.end(), inputs.begin() + static_cast<std::ptrdiff_t>(i), inputs.end());
  outputs.insert(outputs.end(), inputs.begin(), inputs.begin() + static_cast<std::ptrdiff_t>(i));
  return detail_build(std::make_shared<const Signature>(signature), std::move(table), inputs, outputs);
}

/// Nodes in an order where every node follows all of its children.
inline std::vector<NodeId> topological_order(const TermGraph& g) {
  std::vector<NodeId> order;
  std::set<NodeId> done;
  for (const auto& [root, _] : g.node_map()) {
    if (done.count(root)) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      const auto& ch = g.children(n);
      if (next == ch.size()) {
        if (done.insert(n).second) order.push_back(n);
        stack.pop_back();
        continue;
      }
      NodeId c = ch[next++];
      if (!done.count(c)) stack.emplace_back(c, 0);
    }
  }
  return order;
}

}  // namespace atmet
