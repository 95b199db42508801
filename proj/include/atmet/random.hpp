#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atmet/term_graph.hpp"

namespace atmet {

/// Shape bounds for randomly generated components over AT(b0, ..., b{n-1}).
struct RandomGraphOptions {
  std::size_t min_inputs = 0;
  std::size_t max_inputs = 3;
  std::size_t min_outputs = 0;
  std::size_t max_outputs = 3;
  std::size_t max_bas = 8;
  std::size_t max_gates = 6;
  std::size_t max_gate_arity = 3;
  std::size_t max_nodes = 0;      // 0 = no bound on the total node count
  std::size_t label_pool = 8;     // labels are drawn from b0 .. b{label_pool-1}
  bool unique_labels = false;     // every BAS node gets its own label
  bool shuffle_ids = true;        // node ids are a random injection, not 0..n-1
};

inline std::string random_label(std::size_t k) { return "b" + std::to_string(k); }

/// AT(b0 .. b{n-1}).
inline Signature random_signature(std::size_t n) {
  std::set<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.insert(random_label(k));
  return Signature::attack_tree(labels);
}

namespace detail {

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct GraphDraft {
  std::size_t count = 0;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
  std::map<std::size_t, Symbol> symbols;
  std::map<std::size_t, std::vector<std::size_t>> children;
};

inline TermGraph realize(const GraphDraft& d, const Signature& sig, std::mt19937_64& rng, bool shuffle) {
  std::vector<std::uint32_t> ids(d.count);
  std::iota(ids.begin(), ids.end(), 0U);
  if (shuffle) {
    std::vector<std::uint32_t> pool(d.count * 3 + 1);
    std::iota(pool.begin(), pool.end(), 0U);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::copy_n(pool.begin(), d.count, ids.begin());
  }
  auto id = [&](std::size_t k) { return NodeId{ids[k]}; };
  std::vector<NodeId> nodes, inputs, outputs;
  std::map<NodeId, std::string> labels;
  std::map<NodeId, std::vector<NodeId>> children;
  for (std::size_t k = 0; k < d.count; ++k) nodes.push_back(id(k));
  for (std::size_t k : d.inputs) inputs.push_back(id(k));
  for (std::size_t k : d.outputs) outputs.push_back(id(k));
  for (const auto& [k, s] : d.symbols) labels.emplace(id(k), s.name);
  for (const auto& [k, ch] : d.children) {
    auto& out = children[id(k)];
    for (std::size_t c : ch) out.push_back(id(c));
  }
  return make_term_graph(nodes, inputs, outputs, labels, children, sig);
}

inline Symbol draw_gate(std::mt19937_64& rng, std::size_t arity) {
  return rng() % 2 ? Symbol::gate_and(arity) : Symbol::gate_or(arity);
}

inline std::string draw_label(std::mt19937_64& rng, const RandomGraphOptions& o, std::size_t& next_unique) {
  if (o.unique_labels) return random_label(next_unique++);
  return random_label(uniform(rng, 0, std::max<std::size_t>(o.label_pool, 1) - 1));
}

}  // namespace detail

/// A random component with the given number of inputs and outputs. Symbol
/// nodes read from earlier nodes, so the result is acyclic by construction;
/// children and outputs may repeat and some nodes may stay unused.
inline TermGraph random_component(std::mt19937_64& rng, const RandomGraphOptions& o, std::size_t n_in,
                                  std::size_t n_out) {
  const Signature sig = random_signature(o.unique_labels ? std::max(o.max_bas, o.label_pool) : o.label_pool);
  detail::GraphDraft d;
  std::size_t budget = o.max_nodes ? o.max_nodes : n_in + o.max_bas + o.max_gates;
  if (budget < n_in) budget = n_in;
  for (std::size_t k = 0; k < n_in; ++k) d.inputs.push_back(d.count++);
  const std::size_t room = budget - n_in;
  std::size_t n_bas = detail::uniform(rng, 0, std::min(o.max_bas, room));
  std::size_t n_gates = detail::uniform(rng, 0, std::min(o.max_gates, room - n_bas));
  if (n_in + n_bas == 0 && n_gates > 0) n_gates = 0;
  std::size_t next_unique = 0;
  for (std::size_t k = 0; k < n_bas; ++k) {
    d.symbols.emplace(d.count++, Symbol::label(detail::draw_label(rng, o, next_unique)));
  }
  for (std::size_t k = 0; k < n_gates; ++k) {
    const std::size_t arity = detail::uniform(rng, 1, std::max<std::size_t>(o.max_gate_arity, 1));
    std::vector<std::size_t> ch;
    // Prefer recent nodes so gates tend to stack.
    for (std::size_t a = 0; a < arity; ++a) {
      const std::size_t lo = rng() % 3 == 0 ? 0 : (d.count > 4 ? d.count - 4 : 0);
      ch.push_back(detail::uniform(rng, lo, d.count - 1));
    }
    d.symbols.emplace(d.count, detail::draw_gate(rng, arity));
    d.children.emplace(d.count++, std::move(ch));
  }
  if (d.count == 0 && n_out > 0) d.symbols.emplace(d.count++, Symbol::label(detail::draw_label(rng, o, next_unique)));
  for (std::size_t k = 0; k < n_out; ++k) {
    const std::size_t lo = rng() % 2 ? 0 : d.count / 2;
    d.outputs.push_back(detail::uniform(rng, lo, d.count - 1));
  }
  return detail::realize(d, sig, rng, o.shuffle_ids);
}

inline TermGraph random_component(std::mt19937_64& rng, const RandomGraphOptions& o) {
  const std::size_t i = detail::uniform(rng, o.min_inputs, o.max_inputs);
  const std::size_t j = detail::uniform(rng, o.min_outputs, o.max_outputs);
  return random_component(rng, o, i, j);
}

/// A random 0 -> 1 attack tree with 1..max_bas basic steps. Gates combine
/// unconsumed nodes until a single root remains, occasionally re-reading an
/// already consumed node so that subterms are shared.
inline TermGraph random_attack_tree(std::mt19937_64& rng, const RandomGraphOptions& o) {
  const Signature sig = random_signature(o.unique_labels ? std::max(o.max_bas, o.label_pool) : o.label_pool);
  detail::GraphDraft d;
  const std::size_t n_bas = detail::uniform(rng, 1, std::max<std::size_t>(o.max_bas, 1));
  std::size_t next_unique = 0;
  std::vector<std::size_t> open;
  std::vector<std::size_t> all;
  for (std::size_t k = 0; k < n_bas; ++k) {
    d.symbols.emplace(d.count, Symbol::label(detail::draw_label(rng, o, next_unique)));
    open.push_back(d.count);
    all.push_back(d.count++);
  }
  while (open.size() > 1 || (open.size() == 1 && rng() % 4 == 0 && d.count < n_bas + o.max_gates)) {
    std::shuffle(open.begin(), open.end(), rng);
    const std::size_t take = std::min(open.size(), detail::uniform(rng, 1, std::max<std::size_t>(o.max_gate_arity, 1)));
    std::vector<std::size_t> ch(open.end() - static_cast<std::ptrdiff_t>(take), open.end());
    open.resize(open.size() - take);
    if (ch.size() < o.max_gate_arity && rng() % 4 == 0) ch.push_back(all[detail::uniform(rng, 0, all.size() - 1)]);
    std::shuffle(ch.begin(), ch.end(), rng);
    d.symbols.emplace(d.count, detail::draw_gate(rng, ch.size()));
    d.children.emplace(d.count, std::move(ch));
    open.push_back(d.count);
    all.push_back(d.count++);
  }
  d.outputs.push_back(open.front());
  return detail::realize(d, sig, rng, o.shuffle_ids);
}

}  // namespace atmet
