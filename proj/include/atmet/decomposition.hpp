#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "atmet/term_graph.hpp"

namespace atmet {

/// One parallel composite of atomic entries, wires left to right.
using Layer = std::vector<Atom>;

/// A sequential composite of layers, applied first to last (bottom to top).
struct Layers {
  std::vector<Layer> layers;

  friend bool operator==(const Layers&, const Layers&) = default;
};

inline Arity layer_arity(const Layer& layer) {
  Arity a;
  for (const auto& atom : layer) {
    a.inputs += atom.arity().inputs;
    a.outputs += atom.arity().outputs;
  }
  return a;
}

/// Throws ArityMismatch unless adjacent layers agree on their wire counts.
inline void validate_layers(const Layers& layers) {
  for (std::size_t k = 0; k < layers.layers.size(); ++k) {
    for (const auto& atom : layers.layers[k]) {
      if (atom.kind == AtomKind::Symbol && !atom.symbol) {
        throw Error(ErrorKind::UnknownSymbol, "symbol entry without symbol in layer " + std::to_string(k + 1));
      }
    }
    if (k + 1 < layers.layers.size()) {
      auto out = layer_arity(layers.layers[k]).outputs;
      auto in = layer_arity(layers.layers[k + 1]).inputs;
      if (out != in) {
        throw Error(ErrorKind::ArityMismatch, "layer " + std::to_string(k + 1) + " has " + std::to_string(out) +
                                                  " outputs but layer " + std::to_string(k + 2) + " has " +
                                                  std::to_string(in) + " inputs");
      }
    }
  }
}

namespace detail {

class Decomposer {
 public:
  explicit Decomposer(const TermGraph& g) : g_(g) {}

  Layers run() {
    compute_levels();
    std::vector<NodeId> wires = g_.inputs();
    for (std::size_t d = 1; d <= top_; ++d) {
      auto [need, entries] = plan_level(d, wires);
      route(wires, need);
      Layer layer;
      std::vector<NodeId> next;
      bool trivial = true;
      for (const auto& e : entries) {
        if (e.node) {
          layer.push_back(Atom::of(*g_.symbol(*e.node)));
          next.push_back(*e.node);
          trivial = false;
        } else {
          layer.push_back(Atom::id1());
          next.push_back(e.pass);
        }
      }
      if (!trivial) out_.layers.push_back(std::move(layer));
      wires = std::move(next);
    }
    route(wires, g_.outputs());
    if (out_.layers.empty()) {
      Layer id;
      for (std::size_t k = 0; k < g_.inputs().size(); ++k) id.push_back(Atom::id1());
      if (id.empty()) id.push_back(Atom::id0());
      out_.layers.push_back(std::move(id));
    }
    return std::move(out_);
  }

 private:
  struct Entry {
    std::optional<NodeId> node;  // symbol node produced here
    NodeId pass{};               // otherwise a value threaded through
  };

  // depth: inputs 0, other nodes 1 + max over children. Nodes are then placed
  // as late as their consumers allow, which keeps basic attack steps from
  // occupying wires long before they are used.
  void compute_levels() {
    auto order = topological_order(g_);
    std::map<NodeId, std::size_t> depth;
    for (NodeId n : order) {
      std::size_t d = 0;
      if (!g_.is_input(n)) {
        d = 1;
        for (NodeId c : g_.children(n)) d = std::max(d, depth.at(c) + 1);
      }
      depth[n] = d;
      top_ = std::max(top_, d);
    }
    std::set<NodeId> outputs(g_.outputs().begin(), g_.outputs().end());
    std::map<NodeId, std::size_t> consumer_min;  // lowest level consuming the node
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId n = *it;
      if (g_.is_input(n)) {
        level_[n] = 0;
        continue;
      }
      std::size_t lim = outputs.count(n) ? top_ + 1 : std::numeric_limits<std::size_t>::max();
      if (auto c = consumer_min.find(n); c != consumer_min.end()) lim = std::min(lim, c->second);
      const std::size_t lvl = lim == std::numeric_limits<std::size_t>::max() ? top_ : lim - 1;
      level_[n] = lvl;
      for (NodeId c : g_.children(n)) {
        auto [pos, inserted] = consumer_min.emplace(c, lvl);
        if (!inserted) pos->second = std::min(pos->second, lvl);
      }
    }
    // Last level at which each value is consumed; outputs count as top_ + 1.
    for (const auto& [n, _] : g_.node_map()) {
      if (!g_.is_input(n)) {
        for (NodeId c : g_.children(n)) last_use_[c] = std::max(last_use_[c], level_.at(n));
      }
    }
    for (NodeId o : g_.outputs()) last_use_[o] = top_ + 1;
  }

  std::pair<std::vector<NodeId>, std::vector<Entry>> plan_level(std::size_t d, const std::vector<NodeId>& wires) {
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < wires.size(); ++i) pos[wires[i]] = i;
    using Key = std::tuple<std::size_t, int, NodeId>;
    std::vector<std::pair<Key, Entry>> keyed;
    for (NodeId w : wires) {
      auto lu = last_use_.find(w);
      if (lu != last_use_.end() && lu->second > d) keyed.push_back({Key{pos.at(w), 0, w}, Entry{std::nullopt, w}});
    }
    for (const auto& [n, lvl] : level_) {
      if (lvl != d) continue;
      std::size_t key = wires.size();
      for (NodeId c : g_.children(n)) key = std::min(key, pos.at(c));
      keyed.push_back({Key{key, 1, n}, Entry{n, {}}});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<NodeId> need;
    std::vector<Entry> entries;
    for (auto& [_, e] : keyed) {
      if (e.node) {
        const auto& ch = g_.children(*e.node);
        need.insert(need.end(), ch.begin(), ch.end());
      } else {
        need.push_back(e.pass);
      }
      entries.push_back(e);
    }
    return {need, entries};
  }

  // Emits fan-out layers (copy trees, del) then adjacent-swap layers turning
  // the distinct values on `wires` into exactly the sequence `need`.
  void route(std::vector<NodeId>& wires, const std::vector<NodeId>& need) {
    std::map<NodeId, std::size_t> count;
    for (NodeId n : need) ++count[n];
    std::vector<std::pair<NodeId, std::size_t>> cur;
    for (NodeId w : wires) cur.emplace_back(w, count.count(w) ? count.at(w) : 0);
    bool more = true;
    while (more) {
      more = false;
      bool trivial = true;
      Layer layer;
      std::vector<std::pair<NodeId, std::size_t>> next;
      for (auto [w, m] : cur) {
        if (m == 0) {
          layer.push_back(Atom::del());
          trivial = false;
        } else if (m == 1) {
          layer.push_back(Atom::id1());
          next.emplace_back(w, 1);
        } else {
          layer.push_back(Atom::copy());
          next.emplace_back(w, (m + 1) / 2);
          next.emplace_back(w, m / 2);
          trivial = false;
          if (m >= 3) more = true;
        }
      }
      if (!trivial) out_.layers.push_back(std::move(layer));
      cur = std::move(next);
    }

    // Stable matching of equal values, then bubble-sort passes.
    std::map<NodeId, std::vector<std::size_t>> slots;
    for (std::size_t i = need.size(); i-- > 0;) slots[need[i]].push_back(i);
    std::vector<std::size_t> target;
    for (auto& [w, _] : cur) {
      target.push_back(slots.at(w).back());
      slots.at(w).pop_back();
    }
    for (;;) {
      Layer layer;
      bool swapped = false;
      for (std::size_t i = 0; i < target.size();) {
        if (i + 1 < target.size() && target[i] > target[i + 1]) {
          std::swap(target[i], target[i + 1]);
          layer.push_back(Atom::swap());
          swapped = true;
          i += 2;
        } else {
          layer.push_back(Atom::id1());
          i += 1;
        }
      }
      if (!swapped) break;
      out_.layers.push_back(std::move(layer));
    }
    wires = need;
  }

  const TermGraph& g_;
  std::size_t top_ = 0;
  std::map<NodeId, std::size_t> level_;
  std::map<NodeId, std::size_t> last_use_;
  Layers out_;
};

}  // namespace detail

/// Splits `graph` into layers of atomic entries whose sequential composite is
/// isomorphic to `graph`. Between symbol layers, fan-out layers copy or delete
/// values and adjacent-swap layers permute wires; pass-through wires use id1.
inline Layers decompose(const TermGraph& graph) { return detail::Decomposer(graph).run(); }

/// Folds each layer with par_compose and the layers with seq_compose.
inline TermGraph recompose(const Layers& layers, const Signature& signature) {
  validate_layers(layers);
  std::optional<TermGraph> acc;
  for (const auto& layer : layers.layers) {
    TermGraph lg = atomic(Atom::id0(), signature);
    for (const auto& atom : layer) lg = par_compose(lg, atomic(atom, signature));
    acc = acc ? seq_compose(*acc, lg) : lg;
  }
  return acc ? *acc : atomic(Atom::id0(), signature);
}

/// Largest number of wires entering any layer.
inline std::size_t decomposition_width(const Layers& layers) {
  std::size_t w = 0;
  for (const auto& layer : layers.layers) w = std::max(w, layer_arity(layer).inputs);
  return w;
}

/// Largest number of wires on any layer boundary, the final outputs included.
/// A matrix backend materialises channels with up to 2^this rows.
inline std::size_t boundary_width(const Layers& layers) {
  std::size_t w = 0;
  for (const auto& layer : layers.layers) {
    auto a = layer_arity(layer);
    w = std::max({w, a.inputs, a.outputs});
  }
  return w;
}

/// `L1: a ⊗ b ; L2: c`
inline std::string to_text(const Layers& layers) {
  std::string out;
  for (std::size_t k = 0; k < layers.layers.size(); ++k) {
    if (k) out += " ; ";
    out += "L" + std::to_string(k + 1) + ":";
    const auto& layer = layers.layers[k];
    if (layer.empty()) out += " id0";
    for (std::size_t i = 0; i < layer.size(); ++i) {
      out += i ? " ⊗ " : " ";
      out += layer[i].name();
    }
  }
  return out;
}

}  // namespace atmet
