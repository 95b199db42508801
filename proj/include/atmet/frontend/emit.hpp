#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "atmet/decomposition.hpp"
#include "atmet/frontend/parser.hpp"
#include "atmet/matrix_semantics.hpp"

namespace atmet::frontend {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz digraph: edges run from child to parent and the graph is laid
/// out bottom to top; inputs are boxes, outputs are numbered plaintext nodes.
inline std::string to_dot(const ComponentDoc& doc) {
  const TermGraph& g = doc.graph;
  auto name = [&](NodeId n) {
    return n.value < doc.node_names.size() ? doc.node_names[n.value] : "n" + std::to_string(n.value);
  };
  auto id = [](NodeId n) { return "n" + std::to_string(n.value); };
  std::string out = "digraph \"" + detail::dot_escape(doc.name) + "\" {\n  rankdir=BT;\n";
  for (const auto& [n, nd] : g.node_map()) {
    std::string label;
    std::string shape;
    if (!nd.symbol) {
      label = name(n);
      shape = "box";
    } else if (nd.symbol->is_label()) {
      label = name(n) == nd.symbol->name ? name(n) : name(n) + ": " + nd.symbol->name;
      shape = "ellipse";
    } else {
      label = name(n) + ": " + (nd.symbol->kind == SymbolKind::And ? "AND" : "OR");
      shape = nd.symbol->kind == SymbolKind::And ? "invhouse" : "invtriangle";
    }
    out += "  " + id(n) + " [label=\"" + detail::dot_escape(label) + "\", shape=" + shape + "];\n";
  }
  for (const auto& [n, nd] : g.node_map()) {
    for (std::size_t k = 0; k < nd.children.size(); ++k) {
      out += "  " + id(nd.children[k]) + " -> " + id(n) + " [taillabel=\"" + std::to_string(k + 1) + "\"];\n";
    }
  }
  for (std::size_t k = 0; k < g.outputs().size(); ++k) {
    out += "  out" + std::to_string(k) + " [label=\"out " + std::to_string(k + 1) + "\", shape=plaintext];\n";
    out += "  " + id(g.outputs()[k]) + " -> out" + std::to_string(k) + " [style=dashed];\n";
  }
  return out + "}\n";
}

/// JSON for an extended real: a number, or the string "inf".
inline nlohmann::json to_json(const ExtReal& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

inline nlohmann::json to_json(const AttackSet& a) { return nlohmann::json(std::vector<std::string>(a.begin(), a.end())); }

inline nlohmann::json to_json(const Antichain& a) {
  auto out = nlohmann::json::array();
  for (const auto& e : a.elements()) out.push_back(to_json(e));
  return out;
}

inline nlohmann::json to_json(const MultisetOfSets& m) {
  auto out = nlohmann::json::array();
  for (const auto& [set, n] : m.counts()) out.push_back({{"set", to_json(set)}, {"count", n}});
  return out;
}

/// Rows of the matrix in binary-integer order.
template <class V>
nlohmann::json to_json(const BoolMatrix<V>& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t y = 0; y < m.rows(); ++y) {
    auto row = nlohmann::json::array();
    for (std::size_t x = 0; x < m.cols(); ++x) row.push_back(to_json(m.at(y, x)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const Layers& layers) {
  auto out = nlohmann::json::array();
  for (const auto& layer : layers.layers) {
    auto l = nlohmann::json::array();
    for (const auto& atom : layer) l.push_back(atom.name());
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace atmet::frontend
