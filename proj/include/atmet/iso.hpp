#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atmet/term_graph.hpp"

namespace atmet {

namespace detail {

// Structural fingerprint of the sub-graph below each node. Input nodes hash
// their input position, so equal fingerprints are a necessary condition for
// two nodes to correspond under an isomorphism.
inline std::map<NodeId, std::size_t> structural_hashes(const TermGraph& g) {
  std::map<NodeId, std::size_t> h;
  auto mix = [](std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  };
  for (NodeId n : topological_order(g)) {
    const auto& nd = g.node(n);
    std::size_t seed;
    if (!nd.symbol) {
      seed = mix(0x51ed27, *g.input_position(n));
    } else {
      seed = mix(std::hash<std::string>{}(nd.symbol->name), static_cast<std::size_t>(nd.symbol->kind));
      for (NodeId c : nd.children) seed = mix(seed, h.at(c));
    }
    h[n] = seed;
  }
  return h;
}

class IsoMatcher {
 public:
  IsoMatcher(const TermGraph& s, const TermGraph& t)
      : s_(s), t_(t), hs_(structural_hashes(s)), ht_(structural_hashes(t)) {}

  bool run() {
    if (s_.arity() != t_.arity() || s_.node_count() != t_.node_count()) return false;
    for (std::size_t k = 0; k < s_.inputs().size(); ++k) {
      if (!assign(s_.inputs()[k], t_.inputs()[k])) return false;
    }
    for (std::size_t k = 0; k < s_.outputs().size(); ++k) {
      if (!assign(s_.outputs()[k], t_.outputs()[k])) return false;
    }
    return search();
  }

 private:
  // Maps s-node a to t-node b and forces the mapping of their children.
  // Records every new pair on the trail so a failed branch can be undone.
  bool assign(NodeId a, NodeId b) {
    std::vector<std::pair<NodeId, NodeId>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      auto fx = fwd_.find(x);
      auto by = bwd_.find(y);
      if (fx != fwd_.end() || by != bwd_.end()) {
        if (fx == fwd_.end() || by == bwd_.end() || fx->second != y || by->second != x) return false;
        continue;
      }
      if (hs_.at(x) != ht_.at(y)) return false;
      const auto& nx = s_.node(x);
      const auto& ny = t_.node(y);
      if (nx.symbol != ny.symbol || nx.children.size() != ny.children.size()) return false;
      if (!nx.symbol && s_.input_position(x) != t_.input_position(y)) return false;
      fwd_[x] = y;
      bwd_[y] = x;
      trail_.emplace_back(x, y);
      for (std::size_t i = 0; i < nx.children.size(); ++i) work.emplace_back(nx.children[i], ny.children[i]);
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      fwd_.erase(trail_.back().first);
      bwd_.erase(trail_.back().second);
      trail_.pop_back();
    }
  }

  bool search() {
    // Pick the unmapped s-node with the fewest candidates.
    std::optional<NodeId> best;
    std::vector<NodeId> best_candidates;
    for (const auto& [a, _] : s_.node_map()) {
      if (fwd_.count(a)) continue;
      std::vector<NodeId> cands;
      for (const auto& [b, __] : t_.node_map()) {
        if (!bwd_.count(b) && hs_.at(a) == ht_.at(b)) cands.push_back(b);
      }
      if (cands.empty()) return false;
      if (!best || cands.size() < best_candidates.size()) {
        best = a;
        best_candidates = std::move(cands);
      }
    }
    if (!best) return true;
    for (NodeId b : best_candidates) {
      const std::size_t mark = trail_.size();
      if (assign(*best, b) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const TermGraph& s_;
  const TermGraph& t_;
  std::map<NodeId, std::size_t> hs_, ht_;
  std::map<NodeId, NodeId> fwd_, bwd_;
  std::vector<std::pair<NodeId, NodeId>> trail_;
};

}  // namespace detail

/// True iff a bijection between the node sets preserves the input list, the
/// output list, the labels and the ordered child lists.
inline bool iso_equal(const TermGraph& s, const TermGraph& t) {
  return detail::IsoMatcher(s, t).run();
}

}  // namespace atmet
