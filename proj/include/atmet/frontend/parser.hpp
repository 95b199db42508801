#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "atmet/error.hpp"
#include "atmet/ext_real.hpp"
#include "atmet/signature.hpp"
#include "atmet/term_graph.hpp"

namespace atmet::frontend {

/// A parsed component: the term graph plus the source names of its nodes
/// (indexed by NodeId value).
struct ComponentDoc {
  std::string name;
  TermGraph graph;
  std::vector<std::string> node_names;
};

namespace detail {

enum class Tok { Ident, Number, LBrace, RBrace, LBrack, RBrack, LParen, RParen, Comma, Colon, Equals, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

/// Newlines and `;` become Sep tokens; `#` starts a comment.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    const SourceLocation loc{line, col};
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '\n' || c == ';') {
      out.push_back({Tok::Sep, std::string(1, c), loc});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), loc});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                                 ((text[j] == '-' || text[j] == '+') && (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
        ++j;
      }
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), loc});
      advance(j - i);
    } else {
      static const std::map<char, Tok> punct{{'{', Tok::LBrace}, {'}', Tok::RBrace}, {'[', Tok::LBrack},
                                             {']', Tok::RBrack}, {'(', Tok::LParen}, {')', Tok::RParen},
                                             {',', Tok::Comma},  {':', Tok::Colon},  {'=', Tok::Equals}};
      auto it = punct.find(c);
      if (it == punct.end()) throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "'", loc);
      out.push_back({it->second, std::string(1, c), loc});
      advance(1);
    }
  }
  out.push_back({Tok::End, "end of input", {line, col}});
  return out;
}

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Sep: return "line break or ';'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) {
      throw Error(ErrorKind::SyntaxError, "expected " + what + ", found " + found(), peek().loc);
    }
    return next();
  }

  const Token& keyword(const std::string& word) {
    if (!at(Tok::Ident) || peek().text != word) {
      throw Error(ErrorKind::SyntaxError, "expected '" + word + "', found " + found(), peek().loc);
    }
    return next();
  }

  void skip_separators() {
    while (at(Tok::Sep)) next();
  }

  std::string found() const {
    return peek().kind == Tok::Ident || peek().kind == Tok::Number ? "'" + peek().text + "'" : describe(peek().kind);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Ref {
  std::string name;
  SourceLocation loc;
};

struct Decl {
  enum class Kind { Input, Bas, Gate } kind;
  std::string name;
  SourceLocation loc;
  std::string label;          // Bas
  SymbolKind gate{};          // Gate
  std::vector<Ref> children;  // Gate
};

inline std::vector<Ref> ref_list(Cursor& c, Tok open, Tok close, const std::string& what) {
  c.expect(open, describe(open));
  std::vector<Ref> out;
  if (c.at(close)) {
    c.next();
    return out;
  }
  for (;;) {
    const auto& t = c.expect(Tok::Ident, what);
    out.push_back({t.text, t.loc});
    if (c.at(Tok::Comma)) {
      c.next();
      continue;
    }
    c.expect(close, "',' or " + describe(close));
    return out;
  }
}

}  // namespace detail

/// Parses
///
///     component NAME {
///       inputs [x, y]
///       bas NODE [: LABEL]
///       gate NODE = AND(c1, c2, ...) | OR(...)
///       outputs [n1, n1, x]
///     }
///
/// Statements end at a line break or `;`; `#` starts a comment. References
/// may precede declarations.
inline ComponentDoc parse_component(std::string_view text) {
  using detail::Tok;
  detail::Cursor c(detail::tokenize(text));
  c.skip_separators();
  c.keyword("component");
  ComponentDoc doc;
  doc.name = c.expect(Tok::Ident, "component name").text;
  c.skip_separators();
  c.expect(Tok::LBrace, "'{'");

  std::vector<detail::Decl> decls;
  std::optional<std::vector<detail::Ref>> outputs;
  bool seen_inputs = false;
  for (;;) {
    c.skip_separators();
    if (c.at(Tok::RBrace)) {
      c.next();
      break;
    }
    const auto& kw = c.expect(Tok::Ident, "'inputs', 'bas', 'gate', 'outputs' or '}'");
    if (kw.text == "inputs") {
      if (seen_inputs) throw Error(ErrorKind::SyntaxError, "second 'inputs' statement", kw.loc);
      seen_inputs = true;
      for (auto& r : detail::ref_list(c, Tok::LBrack, Tok::RBrack, "input name")) {
        decls.push_back({detail::Decl::Kind::Input, r.name, r.loc, {}, {}, {}});
      }
    } else if (kw.text == "bas") {
      const auto& n = c.expect(Tok::Ident, "node name");
      std::string label = n.text;
      if (c.at(Tok::Colon)) {
        c.next();
        label = c.expect(Tok::Ident, "label").text;
      }
      decls.push_back({detail::Decl::Kind::Bas, n.text, n.loc, label, {}, {}});
    } else if (kw.text == "gate") {
      const auto& n = c.expect(Tok::Ident, "node name");
      c.expect(Tok::Equals, "'='");
      const auto& g = c.expect(Tok::Ident, "'AND' or 'OR'");
      SymbolKind kind;
      if (g.text == "AND") {
        kind = SymbolKind::And;
      } else if (g.text == "OR") {
        kind = SymbolKind::Or;
      } else {
        throw Error(ErrorKind::SyntaxError, "expected 'AND' or 'OR', found '" + g.text + "'", g.loc);
      }
      auto children = detail::ref_list(c, Tok::LParen, Tok::RParen, "child name");
      if (children.empty()) throw Error(ErrorKind::SyntaxError, "gate '" + n.text + "' has no children", g.loc);
      decls.push_back({detail::Decl::Kind::Gate, n.text, n.loc, {}, kind, std::move(children)});
    } else if (kw.text == "outputs") {
      if (outputs) throw Error(ErrorKind::SyntaxError, "second 'outputs' statement", kw.loc);
      outputs = detail::ref_list(c, Tok::LBrack, Tok::RBrack, "output name");
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown statement '" + kw.text + "'", kw.loc);
    }
    if (!c.at(Tok::Sep) && !c.at(Tok::RBrace)) {
      throw Error(ErrorKind::SyntaxError, "expected line break or ';', found " + c.found(), c.peek().loc);
    }
  }
  c.skip_separators();
  if (!c.at(Tok::End)) throw Error(ErrorKind::SyntaxError, "text after component", c.peek().loc);

  std::map<std::string, NodeId> ids;
  for (const auto& d : decls) {
    const NodeId id{static_cast<std::uint32_t>(ids.size())};
    if (!ids.emplace(d.name, id).second) {
      throw Error(ErrorKind::DuplicateNodeDecl, "node '" + d.name + "' is declared twice", d.loc);
    }
    doc.node_names.push_back(d.name);
  }
  auto resolve = [&](const detail::Ref& r) {
    auto it = ids.find(r.name);
    if (it == ids.end()) throw Error(ErrorKind::UnknownNodeRef, "no node named '" + r.name + "'", r.loc);
    return it->second;
  };

  std::set<std::string> labels;
  for (const auto& d : decls) {
    if (d.kind != detail::Decl::Kind::Bas) continue;
    if (Signature::attack_tree({}).find(d.label)) {
      throw Error(ErrorKind::UnknownSymbol, "label '" + d.label + "' collides with a gate symbol name", d.loc);
    }
    labels.insert(d.label);
  }
  const Signature sig = Signature::attack_tree(labels);

  std::vector<NodeId> nodes, inputs, outs;
  std::map<NodeId, std::string> symbol_names;
  std::map<NodeId, std::vector<NodeId>> children;
  for (const auto& d : decls) {
    const NodeId id = ids.at(d.name);
    nodes.push_back(id);
    switch (d.kind) {
      case detail::Decl::Kind::Input: inputs.push_back(id); break;
      case detail::Decl::Kind::Bas: symbol_names.emplace(id, d.label); break;
      case detail::Decl::Kind::Gate: {
        const auto n = d.children.size();
        symbol_names.emplace(id, (d.gate == SymbolKind::And ? Symbol::gate_and(n) : Symbol::gate_or(n)).name);
        auto& ch = children[id];
        for (const auto& r : d.children) ch.push_back(resolve(r));
        break;
      }
    }
  }
  if (outputs) {
    for (const auto& r : *outputs) outs.push_back(resolve(r));
  }
  doc.graph = make_term_graph(nodes, inputs, outs, symbol_names, children, sig);
  return doc;
}

/// Writes a component in the syntax read by `parse_component`.
inline std::string print_component(const ComponentDoc& doc) {
  const TermGraph& g = doc.graph;
  auto name = [&](NodeId n) {
    return n.value < doc.node_names.size() ? doc.node_names[n.value] : "n" + std::to_string(n.value);
  };
  auto list = [&](const std::vector<NodeId>& ns) {
    std::string s;
    for (std::size_t k = 0; k < ns.size(); ++k) s += (k ? ", " : "") + name(ns[k]);
    return s;
  };
  std::string out = "component " + doc.name + " {\n";
  out += "  inputs [" + list(g.inputs()) + "]\n";
  for (NodeId n : topological_order(g)) {
    if (g.is_input(n)) continue;
    const Symbol& s = *g.symbol(n);
    if (s.is_label()) {
      out += "  bas " + name(n) + (s.name == name(n) ? "" : " : " + s.name) + "\n";
    } else {
      out += "  gate " + name(n) + " = " + (s.kind == SymbolKind::And ? "AND" : "OR") + "(" + list(g.children(n)) +
             ")\n";
    }
  }
  out += "  outputs [" + list(g.outputs()) + "]\n}\n";
  return out;
}

/// A document for a graph built elsewhere; nodes are named n0, n1, ...
inline ComponentDoc component_doc(const TermGraph& g, std::string name) {
  ComponentDoc doc{std::move(name), g, {}};
  std::uint32_t top = 0;
  for (const auto& [n, _] : g.node_map()) top = std::max(top, n.value + 1);
  for (std::uint32_t k = 0; k < top; ++k) doc.node_names.push_back("n" + std::to_string(k));
  return doc;
}

/// One value per label, or a weight pair (v0, v1).
struct AttributionDoc {
  std::map<std::string, std::vector<ExtReal>> entries;

  bool all_single() const {
    for (const auto& [_, v] : entries) {
      if (v.size() != 1) return false;
    }
    return true;
  }
  bool all_pairs() const {
    for (const auto& [_, v] : entries) {
      if (v.size() != 2) return false;
    }
    return true;
  }
};

inline ExtReal parse_value(std::string_view s, SourceLocation loc = {}) {
  if (s == "inf") return ExtReal::infinity();
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !(v >= 0) || v == HUGE_VAL) {
    throw Error(ErrorKind::ValueParseError, "'" + std::string(s) + "' is not a non-negative decimal or 'inf'", loc);
  }
  return ExtReal(v);
}

/// Lines `LABEL = V` or `LABEL = V0, V1`; values are decimals or `inf`.
/// With `known` given, every label must be one of them.
inline AttributionDoc parse_attribution(std::string_view text, const std::set<std::string>* known = nullptr) {
  using detail::Tok;
  detail::Cursor c(detail::tokenize(text));
  AttributionDoc doc;
  for (;;) {
    c.skip_separators();
    if (c.at(Tok::End)) break;
    const auto& label = c.expect(Tok::Ident, "label");
    if (known && !known->count(label.text)) {
      throw Error(ErrorKind::UnknownLabel, "label '" + label.text + "' does not occur in the component", label.loc);
    }
    if (doc.entries.count(label.text)) {
      throw Error(ErrorKind::SyntaxError, "label '" + label.text + "' is given twice", label.loc);
    }
    c.expect(Tok::Equals, "'='");
    std::vector<ExtReal> values;
    for (;;) {
      const auto& t = c.peek();
      if (t.kind != Tok::Number && !(t.kind == Tok::Ident && t.text == "inf")) {
        if (t.kind == Tok::Ident) throw Error(ErrorKind::ValueParseError, "'" + t.text + "' is not a value", t.loc);
        throw Error(ErrorKind::SyntaxError, "expected a value, found " + c.found(), t.loc);
      }
      values.push_back(parse_value(c.next().text, t.loc));
      if (!c.at(Tok::Comma)) break;
      c.next();
    }
    if (values.size() > 2) throw Error(ErrorKind::SyntaxError, "at most two values per label", label.loc);
    if (!c.at(Tok::Sep) && !c.at(Tok::End)) {
      throw Error(ErrorKind::SyntaxError, "expected line break, found " + c.found(), c.peek().loc);
    }
    doc.entries.emplace(label.text, std::move(values));
  }
  return doc;
}

}  // namespace atmet::frontend
