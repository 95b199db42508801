#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atmet/channel.hpp"
#include "atmet/semiring.hpp"
#include "atmet/term_graph.hpp"

namespace atmet {

/// A total function X^in -> X^out.
template <class X>
struct FuncChannel {
  std::size_t in = 0;
  std::size_t out = 0;
  std::function<std::vector<X>(const std::vector<X>&)> fn;

  std::vector<X> operator()(const std::vector<X>& x) const { return fn(x); }
};

/// What the function backend needs to know about X to compare channels:
/// either a finite enumeration, or a sampler for randomised comparison.
template <class X>
struct Carrier {
  std::vector<X> elements;  // empty when X is not enumerated
  std::function<X(std::mt19937_64&)> sample;
  std::function<bool(const X&, const X&)> equal = [](const X& a, const X& b) { return a == b; };
  std::function<std::string(const X&)> format;
};

/// Channels are functions; ⊗ is the cartesian product of maps.
template <class X>
class FunctionsBackend {
 public:
  using Channel = FuncChannel<X>;

  static constexpr std::size_t kExhaustiveLimit = std::size_t{1} << 16;
  static constexpr std::size_t kSampledPoints = 1000;

  explicit FunctionsBackend(Carrier<X> carrier) : carrier_(std::make_shared<const Carrier<X>>(std::move(carrier))) {}

  const Carrier<X>& carrier() const { return *carrier_; }

  Channel compose(const Channel& first, const Channel& second) const {
    if (first.out != second.in) {
      throw Error(ErrorKind::ArityMismatch, "cannot compose functions " + std::to_string(first.in) + "->" +
                                                std::to_string(first.out) + " and " + std::to_string(second.in) +
                                                "->" + std::to_string(second.out));
    }
    return {first.in, second.out, [f = first.fn, g = second.fn](const std::vector<X>& x) { return g(f(x)); }};
  }

  Channel tensor(const Channel& left, const Channel& right) const {
    return {left.in + right.in, left.out + right.out,
            [f = left.fn, g = right.fn, split = left.in](const std::vector<X>& x) {
              std::vector<X> a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(split));
              std::vector<X> b(x.begin() + static_cast<std::ptrdiff_t>(split), x.end());
              auto y = f(a);
              auto z = g(b);
              y.insert(y.end(), z.begin(), z.end());
              return y;
            }};
  }

  Channel ident(std::size_t n) const {
    return {n, n, [](const std::vector<X>& x) { return x; }};
  }

  Channel swap(std::size_t i, std::size_t j) const {
    return {i + j, i + j, [i](const std::vector<X>& x) {
              std::vector<X> y(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
              y.insert(y.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
              return y;
            }};
  }

  Channel copy() const {
    return {1, 2, [](const std::vector<X>& x) { return std::vector<X>{x[0], x[0]}; }};
  }

  Channel del() const {
    return {1, 0, [](const std::vector<X>&) { return std::vector<X>{}; }};
  }

  /// A function () -> (value).
  Channel constant(X value) const {
    return {0, 1, [v = std::move(value)](const std::vector<X>&) { return std::vector<X>{v}; }};
  }

  Arity arity(const Channel& f) const { return {f.in, f.out}; }

  /// Extensional on X^in when X is enumerated and |X|^in <= 2^16, otherwise
  /// compared on 1000 sampled points from a fixed seed.
  bool equal(const Channel& f, const Channel& g) const {
    if (f.in != g.in || f.out != g.out) return false;
    bool ok = true;
    for_each_point(f.in, [&](const std::vector<X>& x) {
      if (!ok) return;
      auto a = f(x);
      auto b = g(x);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (!carrier_->equal(a[k], b[k])) {
          ok = false;
          return;
        }
      }
    });
    return ok;
  }

  std::string describe(const Channel& f) const {
    std::string out = "fn " + std::to_string(f.in) + "->" + std::to_string(f.out);
    if (!carrier_->format) return out;
    std::size_t shown = 0;
    out += " {";
    for_each_point(f.in, [&](const std::vector<X>& x) {
      if (shown++ >= 8) return;
      out += " (" + join(x) + ")->(" + join(f(x)) + ")";
    });
    return out + " }";
  }

 private:
  bool exhaustive(std::size_t in) const {
    if (carrier_->elements.empty()) return in == 0;
    std::size_t total = 1;
    for (std::size_t k = 0; k < in; ++k) {
      total *= carrier_->elements.size();
      if (total > kExhaustiveLimit) return false;
    }
    return true;
  }

  template <class Fn>
  void for_each_point(std::size_t in, Fn&& visit) const {
    if (exhaustive(in)) {
      const auto& el = carrier_->elements;
      std::vector<std::size_t> idx(in, 0);
      std::vector<X> x;
      for (;;) {
        x.clear();
        for (std::size_t k = 0; k < in; ++k) x.push_back(el[idx[k]]);
        visit(x);
        std::size_t k = in;
        while (k > 0 && ++idx[k - 1] == el.size()) idx[--k] = 0;
        if (k == 0) return;
      }
    }
    if (!carrier_->sample) throw Error(ErrorKind::ShapeMismatch, "carrier cannot be sampled");
    std::mt19937_64 rng(0x5eed);
    std::vector<X> x;
    for (std::size_t s = 0; s < kSampledPoints; ++s) {
      x.clear();
      for (std::size_t k = 0; k < in; ++k) x.push_back(carrier_->sample(rng));
      visit(x);
    }
  }

  std::string join(const std::vector<X>& xs) const {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + carrier_->format(xs[k]);
    return s;
  }

  std::shared_ptr<const Carrier<X>> carrier_;
};

using Bit = std::uint8_t;

inline Carrier<Bit> boolean_carrier() {
  Carrier<Bit> c;
  c.elements = {0, 1};
  c.sample = [](std::mt19937_64& rng) { return static_cast<Bit>(rng() & 1U); };
  c.format = [](const Bit& b) { return std::to_string(static_cast<int>(b)); };
  return c;
}

/// Carrier descriptions used when comparing function channels over a
/// semiring's values.
inline Carrier<ExtReal> semiring_carrier(const NumericSemiring& sr) {
  Carrier<ExtReal> c;
  const bool unit_interval = sr.kind() == NumericSemiring::Kind::MaxProbability;
  c.sample = [unit_interval](std::mt19937_64& rng) {
    if (unit_interval) return ExtReal(static_cast<double>(rng() % 101) / 100.0);
    if (rng() % 10 == 0) return ExtReal::infinity();
    return ExtReal(static_cast<double>(rng() % 200));
  };
  c.equal = [sr](const ExtReal& a, const ExtReal& b) { return sr.equal(a, b); };
  c.format = [](const ExtReal& a) { return a.to_string(); };
  return c;
}

inline Carrier<Antichain> semiring_carrier(const AntichainSemiring& sr) {
  Carrier<Antichain> c;
  std::vector<std::string> universe(sr.universe().begin(), sr.universe().end());
  c.sample = [universe](std::mt19937_64& rng) {
    std::set<AttackSet> sets;
    const auto n = rng() % 4;
    for (std::size_t k = 0; k < n; ++k) {
      AttackSet a;
      for (const auto& b : universe) {
        if (rng() % 3 == 0) a.insert(b);
      }
      sets.insert(a);
    }
    return antichain_normalize(sets);
  };
  c.format = [](const Antichain& a) { return format_antichain(a); };
  return c;
}

inline Carrier<MultisetOfSets> semiring_carrier(const MultisetSemiring& sr, std::vector<std::string> universe = {}) {
  (void)sr;
  Carrier<MultisetOfSets> c;
  c.sample = [universe](std::mt19937_64& rng) {
    std::map<AttackSet, std::uint64_t> counts;
    const auto n = rng() % 3;
    for (std::size_t k = 0; k < n; ++k) {
      AttackSet a;
      for (const auto& b : universe) {
        if (rng() % 2 == 0) a.insert(b);
      }
      counts[a] += 1 + rng() % 2;
    }
    return MultisetOfSets(counts);
  };
  c.format = [](const MultisetOfSets& m) { return format_multiset(m); };
  return c;
}

/// Truth assignment interpretation: labels are constants, AND_i / OR_i are
/// i-ary conjunction and disjunction.
inline Interpretation<FunctionsBackend<Bit>> boolean_interpretation(std::map<std::string, bool> truth) {
  FunctionsBackend<Bit> backend(boolean_carrier());
  auto assign = [backend, truth = std::move(truth)](const Symbol& s) -> FuncChannel<Bit> {
    switch (s.kind) {
      case SymbolKind::Label: {
        auto it = truth.find(s.name);
        if (it == truth.end()) throw Error(ErrorKind::MissingLabel, "no truth value for label '" + s.name + "'");
        return backend.constant(it->second ? 1 : 0);
      }
      case SymbolKind::And:
        return {s.arity, 1, [](const std::vector<Bit>& x) {
                  Bit r = 1;
                  for (Bit b : x) r = static_cast<Bit>(r & b);
                  return std::vector<Bit>{r};
                }};
      case SymbolKind::Or:
        return {s.arity, 1, [](const std::vector<Bit>& x) {
                  Bit r = 0;
                  for (Bit b : x) r = static_cast<Bit>(r | b);
                  return std::vector<Bit>{r};
                }};
      case SymbolKind::Generic: break;
    }
    throw Error(ErrorKind::MissingSymbol, "no Boolean meaning for symbol '" + s.name + "'");
  };
  return {backend, assign};
}

template <Semiring S>
using Attribution = std::map<std::string, typename S::value_type>;

/// AND_i is the i-ary semiring product, OR_i the i-ary sum, label b the
/// constant alpha(b).
template <Semiring S>
Interpretation<FunctionsBackend<typename S::value_type>> bottom_up_interpretation(
    const S& sr, Attribution<S> alpha, Carrier<typename S::value_type> carrier) {
  using V = typename S::value_type;
  FunctionsBackend<V> backend(std::move(carrier));
  auto assign = [backend, sr, alpha = std::move(alpha)](const Symbol& s) -> FuncChannel<V> {
    switch (s.kind) {
      case SymbolKind::Label: {
        auto it = alpha.find(s.name);
        if (it == alpha.end()) throw Error(ErrorKind::MissingLabel, "no attribution for label '" + s.name + "'");
        return backend.constant(it->second);
      }
      case SymbolKind::And:
        return {s.arity, 1, [sr](const std::vector<V>& x) { return std::vector<V>{semiring_product(sr, x)}; }};
      case SymbolKind::Or:
        return {s.arity, 1, [sr](const std::vector<V>& x) { return std::vector<V>{semiring_sum(sr, x)}; }};
      case SymbolKind::Generic: break;
    }
    throw Error(ErrorKind::MissingSymbol, "no bottom-up meaning for symbol '" + s.name + "'");
  };
  return {backend, assign};
}

template <Semiring S>
auto bottom_up_interpretation(const S& sr, Attribution<S> alpha) {
  return bottom_up_interpretation(sr, std::move(alpha), semiring_carrier(sr));
}

inline void require_attack_tree(const TermGraph& t) {
  if (t.arity() != Arity{0, 1}) {
    throw Error(ErrorKind::NotAnAttackTree, "expected a 0->1 attack tree, got " + to_string(t.arity()));
  }
}

/// Recursive bottom-up evaluation of an attack tree from its root, memoised
/// per node. Agrees with evaluating under `bottom_up_interpretation`.
template <Semiring S>
typename S::value_type eval_bottom_up_recursive(const TermGraph& t, const S& sr, const Attribution<S>& alpha) {
  require_attack_tree(t);
  using V = typename S::value_type;
  std::map<NodeId, V> memo;
  for (NodeId n : topological_order(t)) {
    const auto& s = *t.symbol(n);
    std::vector<V> kids;
    for (NodeId c : t.children(n)) kids.push_back(memo.at(c));
    switch (s.kind) {
      case SymbolKind::Label: {
        auto it = alpha.find(s.name);
        if (it == alpha.end()) throw Error(ErrorKind::MissingLabel, "no attribution for label '" + s.name + "'");
        memo.emplace(n, it->second);
        break;
      }
      case SymbolKind::And: memo.emplace(n, semiring_product(sr, kids)); break;
      case SymbolKind::Or: memo.emplace(n, semiring_sum(sr, kids)); break;
      case SymbolKind::Generic:
        throw Error(ErrorKind::MissingSymbol, "no bottom-up meaning for symbol '" + s.name + "'");
    }
  }
  return memo.at(t.outputs().front());
}

/// Labels of the basic attack step nodes of `t`, sorted and deduplicated.
inline std::set<std::string> bas_labels(const TermGraph& t) {
  std::set<std::string> out;
  for (const auto& [n, nd] : t.node_map()) {
    if (nd.symbol && nd.symbol->is_label()) out.insert(nd.symbol->name);
  }
  return out;
}

/// Bottom-up semantics over multisets of attack sets with alpha(b) = {{b}:1}.
inline MultisetOfSets multiset_semantics(const TermGraph& t) {
  require_attack_tree(t);
  auto labels = bas_labels(t);
  MultisetSemiring sr(labels);
  Attribution<MultisetSemiring> alpha;
  for (const auto& b : labels) alpha.emplace(b, sr.singleton(b));
  return eval_bottom_up_recursive(t, sr, alpha);
}

}  // namespace atmet
