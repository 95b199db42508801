#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atmet/decomposition.hpp"
#include "atmet/term_graph.hpp"

namespace atmet {

/// A channel category: channels with a number of input and output wires,
/// sequential composition `compose(first, second)` (= second ∘ first),
/// parallel composition `tensor(left, right)` and the structural channels.
/// The axioms are not enforced by the type system; see `check_axioms`.
template <class B>
concept ChannelBackend = requires(const B& b, const typename B::Channel& f, std::size_t n) {
  typename B::Channel;
  { b.compose(f, f) } -> std::same_as<typename B::Channel>;
  { b.tensor(f, f) } -> std::same_as<typename B::Channel>;
  { b.ident(n) } -> std::same_as<typename B::Channel>;
  { b.swap(n, n) } -> std::same_as<typename B::Channel>;
  { b.copy() } -> std::same_as<typename B::Channel>;
  { b.del() } -> std::same_as<typename B::Channel>;
  { b.arity(f) } -> std::same_as<Arity>;
  { b.equal(f, f) } -> std::convertible_to<bool>;
  { b.describe(f) } -> std::convertible_to<std::string>;
};

/// Backends with exponential channel size expose a wire cap.
template <class B>
concept WidthCappedBackend = ChannelBackend<B> && requires(const B& b) {
  { b.width_cap() } -> std::convertible_to<std::size_t>;
};

/// Backends that can apply a whole layer to an accumulated channel without
/// materialising the layer's tensor product. Must agree with
/// `compose(acc, tensor(atoms...))`.
template <class B>
concept LayerFusingBackend = ChannelBackend<B> && requires(const B& b, const typename B::Channel& f,
                                                          const std::vector<typename B::Channel>& atoms) {
  { b.compose_layer(f, atoms) } -> std::same_as<typename B::Channel>;
};

/// Assignment of a channel `arity(f) -> 1` to every function symbol.
template <ChannelBackend B>
struct Interpretation {
  B backend;
  std::function<typename B::Channel(const Symbol&)> assign;

  typename B::Channel image(const Symbol& s) const {
    if (!assign) throw Error(ErrorKind::MissingSymbol, "interpretation has no assignment");
    auto ch = assign(s);
    if (backend.arity(ch) != Arity{s.arity, 1}) {
      throw Error(ErrorKind::ArityMismatch, "image of " + s.name + " has arity " + to_string(backend.arity(ch)));
    }
    return ch;
  }
};

template <ChannelBackend B>
typename B::Channel atom_image(const Atom& atom, const Interpretation<B>& interp) {
  const B& b = interp.backend;
  switch (atom.kind) {
    case AtomKind::Id0: return b.ident(0);
    case AtomKind::Id1: return b.ident(1);
    case AtomKind::Copy: return b.copy();
    case AtomKind::Del: return b.del();
    case AtomKind::Swap: return b.swap(1, 1);
    case AtomKind::Symbol: return interp.image(*atom.symbol);
  }
  throw Error(ErrorKind::MissingSymbol, "unknown atom");
}

/// Folds a layered decomposition: tensor the atom images within each layer,
/// then compose the layers in order.
template <ChannelBackend B>
typename B::Channel evaluate_layers(const Layers& layers, const Interpretation<B>& interp) {
  validate_layers(layers);
  if constexpr (WidthCappedBackend<B>) {
    const auto w = boundary_width(layers);
    if (w > interp.backend.width_cap()) {
      throw Error(ErrorKind::WidthCapExceeded, "decomposition needs " + std::to_string(w) + " wires, cap is " +
                                                   std::to_string(interp.backend.width_cap()));
    }
  }
  const B& b = interp.backend;
  std::optional<typename B::Channel> acc;
  for (const auto& layer : layers.layers) {
    if constexpr (LayerFusingBackend<B>) {
      if (acc) {
        std::vector<typename B::Channel> atoms;
        for (const auto& atom : layer) atoms.push_back(atom_image(atom, interp));
        acc = b.compose_layer(*acc, atoms);
        continue;
      }
    }
    auto lc = b.ident(0);
    for (const auto& atom : layer) lc = b.tensor(lc, atom_image(atom, interp));
    acc = acc ? b.compose(*acc, lc) : lc;
  }
  return acc ? *acc : b.ident(0);
}

/// Semantics of `graph` under `interp`: the unique structure-preserving
/// extension of the interpretation, computed from a decomposition into atoms.
template <ChannelBackend B>
typename B::Channel evaluate(const TermGraph& graph, const Interpretation<B>& interp) {
  return evaluate_layers(decompose(graph), interp);
}

/// One law instance family and what was found for it.
struct LawCheck {
  int group = 0;  // axiom group 1-4, or 0 for functor laws
  std::string law;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
};

struct LawReport {
  std::vector<LawCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.counterexamples.empty()) return false;
    }
    return true;
  }

  bool group_failed(int group) const {
    for (const auto& c : checks) {
      if (c.group == group && !c.counterexamples.empty()) return true;
    }
    return false;
  }

  std::size_t min_checked() const {
    std::size_t m = checks.empty() ? 0 : checks.front().checked;
    for (const auto& c : checks) m = std::min(m, c.checked);
    return m;
  }

  std::size_t counterexample_count() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.counterexamples.size();
    return n;
  }

  LawCheck& entry(int group, const std::string& law) {
    for (auto& c : checks) {
      if (c.group == group && c.law == law) return c;
    }
    checks.push_back({group, law, 0, {}});
    return checks.back();
  }
};

namespace detail {

template <ChannelBackend B>
void record(LawReport& rep, const B& b, int group, const std::string& law, const typename B::Channel& lhs,
            const typename B::Channel& rhs) {
  auto& e = rep.entry(group, law);
  ++e.checked;
  if (b.arity(lhs) != b.arity(rhs) || !b.equal(lhs, rhs)) {
    e.counterexamples.push_back("lhs " + to_string(b.arity(lhs)) + " = " + b.describe(lhs) + " ; rhs " +
                                to_string(b.arity(rhs)) + " = " + b.describe(rhs));
  }
}

}  // namespace detail

/// Checks the four channel-category axiom groups on sampled channels.
/// `sample(rng, i, j)` must return a channel with i inputs and j outputs.
template <ChannelBackend B, class Sampler>
LawReport check_axioms(const B& b, Sampler&& sample, std::size_t n_samples, std::size_t max_wires = 2,
                       std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> wires(0, max_wires);
  LawReport rep;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::size_t i = wires(rng), j = wires(rng), k = wires(rng), l = wires(rng);
    auto f = sample(rng, i, j);
    auto g = sample(rng, j, k);
    auto h = sample(rng, k, l);
    detail::record(rep, b, 1, "(h∘g)∘f = h∘(g∘f)", b.compose(f, b.compose(g, h)), b.compose(b.compose(f, g), h));
    detail::record(rep, b, 1, "f∘id = f", b.compose(b.ident(i), f), f);
    detail::record(rep, b, 1, "id∘f = f", b.compose(f, b.ident(j)), f);

    detail::record(rep, b, 2, "(f⊗g)⊗h = f⊗(g⊗h)", b.tensor(b.tensor(f, g), h), b.tensor(f, b.tensor(g, h)));
    detail::record(rep, b, 2, "f⊗id0 = f", b.tensor(f, b.ident(0)), f);
    detail::record(rep, b, 2, "id0⊗f = f", b.tensor(b.ident(0), f), f);

    // f: i->j, g: k->l (reusing h's shape for g).
    const std::size_t gi = wires(rng), gl = wires(rng);
    auto g2 = sample(rng, gi, gl);
    detail::record(rep, b, 3, "swap∘(g⊗f) = (f⊗g)∘swap", b.compose(b.tensor(g2, f), b.swap(gl, j)),
                   b.compose(b.swap(gi, i), b.tensor(f, g2)));
    detail::record(rep, b, 3, "swap_{i,j}∘swap_{j,i} = id", b.compose(b.swap(j, i), b.swap(i, j)), b.ident(i + j));
    auto f1 = sample(rng, i, j);
    auto f2 = sample(rng, k, l);
    auto g1 = sample(rng, j, gi);
    auto g3 = sample(rng, l, gl);
    detail::record(rep, b, 3, "(g1⊗g2)∘(f1⊗f2) = (g1∘f1)⊗(g2∘f2)", b.compose(b.tensor(f1, f2), b.tensor(g1, g3)),
                   b.tensor(b.compose(f1, g1), b.compose(f2, g3)));

    const auto cp = b.copy();
    const auto id1 = b.ident(1);
    detail::record(rep, b, 4, "(copy⊗id)∘copy = (id⊗copy)∘copy", b.compose(cp, b.tensor(cp, id1)),
                   b.compose(cp, b.tensor(id1, cp)));
    detail::record(rep, b, 4, "(del⊗id)∘copy = id", b.compose(cp, b.tensor(b.del(), id1)), id1);
    detail::record(rep, b, 4, "(id⊗del)∘copy = id", b.compose(cp, b.tensor(id1, b.del())), id1);
    detail::record(rep, b, 4, "swap∘copy = copy", b.compose(cp, b.swap(1, 1)), cp);
  }
  return rep;
}

/// Checks that evaluation under `interp` preserves composition, tensor and
/// the structural channels. `sample(rng, i, j)` returns a term graph i -> j.
template <ChannelBackend B, class GraphSampler>
LawReport check_functor_laws(const Interpretation<B>& interp, GraphSampler&& sample, std::size_t n_samples,
                             std::size_t max_wires = 2, std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> wires(0, max_wires);
  const B& b = interp.backend;
  auto F = [&](const TermGraph& g) { return evaluate(g, interp); };
  LawReport rep;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::size_t i = wires(rng), j = wires(rng), k = wires(rng), l = wires(rng);
    TermGraph f = sample(rng, i, j);
    TermGraph g = sample(rng, j, k);
    TermGraph h = sample(rng, k, l);
    const Signature& sig = f.signature();
    detail::record(rep, b, 0, "F(g∘f) = F(g)∘F(f)", F(seq_compose(f, g)), b.compose(F(f), F(g)));
    detail::record(rep, b, 0, "F(f⊗h) = F(f)⊗F(h)", F(par_compose(f, h)), b.tensor(F(f), F(h)));
    detail::record(rep, b, 0, "F(id_n) = id_n", F(identity(i, sig)), b.ident(i));
    detail::record(rep, b, 0, "F(swap_{i,j}) = swap_{i,j}", F(swap_block(i, j, sig)), b.swap(i, j));
    detail::record(rep, b, 0, "F(copy) = copy", F(atomic(Atom::copy(), sig)), b.copy());
    detail::record(rep, b, 0, "F(del) = del", F(atomic(Atom::del(), sig)), b.del());
    detail::record(rep, b, 0, "F(id0) = id0", F(atomic(Atom::id0(), sig)), b.ident(0));
  }
  return rep;
}

}  // namespace atmet
