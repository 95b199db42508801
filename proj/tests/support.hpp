#pragma once

#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atmet/atmet.hpp"

namespace atmet::testing {

inline Signature room_signature() { return Signature::attack_tree({"D", "F", "S"}); }

// root = AND(OR(D, F), OR(F, S)), F shared.
inline TermGraph room() {
  NodeId D{0}, F{1}, S{2}, t{3}, d{4}, r{5};
  return make_term_graph({D, F, S, t, d, r}, {}, {r},
                         {{D, "D"}, {F, "F"}, {S, "S"}, {t, "OR_2"}, {d, "OR_2"}, {r, "AND_2"}},
                         {{t, {D, F}}, {d, {F, S}}, {r, {t, d}}}, room_signature());
}

// The same tree with F written twice.
inline TermGraph room_duplicated() {
  NodeId D{0}, F1{1}, F2{2}, S{3}, t{4}, d{5}, r{6};
  return make_term_graph({D, F1, F2, S, t, d, r}, {}, {r},
                         {{D, "D"}, {F1, "F"}, {F2, "F"}, {S, "S"}, {t, "OR_2"}, {d, "OR_2"}, {r, "AND_2"}},
                         {{t, {D, F1}}, {d, {F2, S}}, {r, {t, d}}}, room_signature());
}

// The 0 -> 2 component with outputs [turnstile, door].
inline TermGraph room_sub() {
  NodeId D{0}, F{1}, S{2}, t{3}, d{4};
  return make_term_graph({D, F, S, t, d}, {}, {t, d}, {{D, "D"}, {F, "F"}, {S, "S"}, {t, "OR_2"}, {d, "OR_2"}},
                         {{t, {D, F}}, {d, {F, S}}}, room_signature());
}

inline Atom sym(const std::string& name) { return Atom::of(room_signature().lookup(name)); }

// AND ∘ (OR ⊗ OR) ∘ (id ⊗ copy ⊗ id) ∘ (D ⊗ F ⊗ S)
inline Layers room_layers() {
  return {{{sym("D"), sym("F"), sym("S")},
           {Atom::id1(), Atom::copy(), Atom::id1()},
           {sym("OR_2"), sym("OR_2")},
           {sym("AND_2")}}};
}

// AND ∘ (OR ⊗ OR) ∘ (D ⊗ copy ⊗ S) ∘ F
inline Layers room_short_layers() {
  return {{{sym("F")}, {sym("D"), Atom::copy(), sym("S")}, {sym("OR_2"), sym("OR_2")}, {sym("AND_2")}}};
}

inline Attribution<NumericSemiring> room_costs() { return {{"D", 30.0}, {"F", 100.0}, {"S", 80.0}}; }

inline NumericSemiring mincost() { return NumericSemiring(NumericSemiring::Kind::MinCost); }
inline NumericSemiring unrel() { return NumericSemiring(NumericSemiring::Kind::Unreliability); }
inline NumericSemiring maxprob() { return NumericSemiring(NumericSemiring::Kind::MaxProbability); }

inline std::vector<NumericSemiring> all_numeric() {
  std::vector<NumericSemiring> out;
  for (const auto& n : table1_names()) out.push_back(table1_semiring(n));
  return out;
}

// Random values of each semiring carrier.
inline ExtReal random_value(std::mt19937_64& rng, const NumericSemiring& sr) {
  using K = NumericSemiring::Kind;
  switch (sr.kind()) {
    case K::MaxProbability: return ExtReal(static_cast<double>(rng() % 101) / 100.0);
    case K::Unreliability: return ExtReal(static_cast<double>(rng() % 41) / 8.0);
    default: return rng() % 8 == 0 ? ExtReal::infinity() : ExtReal(static_cast<double>(rng() % 60));
  }
}

inline Antichain random_antichain(std::mt19937_64& rng, const std::vector<std::string>& universe) {
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
}

inline MultisetOfSets random_multiset(std::mt19937_64& rng, const std::vector<std::string>& universe) {
  std::map<AttackSet, std::uint64_t> counts;
  const auto n = rng() % 4;
  for (std::size_t k = 0; k < n; ++k) {
    AttackSet a;
    for (const auto& b : universe) {
      if (rng() % 2 == 0) a.insert(b);
    }
    counts[a] += 1 + rng() % 3;
  }
  return MultisetOfSets(counts);
}

inline const std::vector<std::string>& small_universe() {
  static const std::vector<std::string> u{"a", "b", "c", "d"};
  return u;
}

// A random truth table i -> j.
inline FuncChannel<Bit> random_function(std::mt19937_64& rng, std::size_t i, std::size_t j) {
  std::vector<std::vector<Bit>> table(std::size_t{1} << i, std::vector<Bit>(j));
  for (auto& row : table) {
    for (auto& b : row) b = static_cast<Bit>(rng() & 1U);
  }
  return {i, j, [table](const std::vector<Bit>& x) {
            std::size_t idx = 0;
            for (Bit b : x) idx = (idx << 1) | b;
            return table[idx];
          }};
}

// A random matrix i -> j with arbitrary entries.
template <Semiring S, class Gen>
BoolMatrix<typename S::value_type> random_matrix(std::mt19937_64& rng, const BoolStochBackend<S>& b, std::size_t i,
                                                 std::size_t j, Gen&& gen) {
  auto m = b.blank(i, j);
  for (std::size_t y = 0; y < m.rows(); ++y) {
    for (std::size_t x = 0; x < m.cols(); ++x) m.at(y, x) = gen(rng);
  }
  return m;
}

// A random stochastic matrix: every column sums to one.
inline BoolMatrix<ExtReal> random_stochastic(std::mt19937_64& rng, const BoolStochBackend<NumericSemiring>& b,
                                             std::size_t i, std::size_t j) {
  const auto& sr = b.semiring();
  auto m = b.blank(i, j);
  for (std::size_t x = 0; x < m.cols(); ++x) {
    if (sr.kind() == NumericSemiring::Kind::Unreliability) {
      std::vector<double> w(m.rows());
      double total = 0;
      for (auto& v : w) total += (v = static_cast<double>(rng() % 10));
      if (total == 0) {
        w[rng() % w.size()] = 1;
        total = 1;
      }
      for (std::size_t y = 0; y < m.rows(); ++y) m.at(y, x) = ExtReal(w[y] / total);
      continue;
    }
    for (std::size_t y = 0; y < m.rows(); ++y) {
      auto v = random_value(rng, sr);
      // Keep every entry on the zero side of one so that one dominates the sum.
      m.at(y, x) = sr.equal(sr.plus(v, sr.one()), sr.one()) ? v : sr.zero();
    }
    m.at(rng() % m.rows(), x) = sr.one();
  }
  return m;
}

inline BoolMatrix<Antichain> random_stochastic(std::mt19937_64& rng, const BoolStochBackend<AntichainSemiring>& b,
                                               std::size_t i, std::size_t j) {
  auto m = b.blank(i, j);
  for (std::size_t x = 0; x < m.cols(); ++x) {
    for (std::size_t y = 0; y < m.rows(); ++y) m.at(y, x) = random_antichain(rng, small_universe());
    m.at(rng() % m.rows(), x) = b.semiring().one();
  }
  return m;
}

// Multisets sum to one only when one entry is {∅:1} and the rest are empty.
inline BoolMatrix<MultisetOfSets> random_stochastic(std::mt19937_64& rng, const BoolStochBackend<MultisetSemiring>& b,
                                                    std::size_t i, std::size_t j) {
  auto m = b.blank(i, j);
  for (std::size_t x = 0; x < m.cols(); ++x) m.at(rng() % m.rows(), x) = b.semiring().one();
  return m;
}

// Stochastic weights for random labels: either (one, v) or (v, one).
inline BasWeights<ExtReal> random_weights(std::mt19937_64& rng, const NumericSemiring& sr,
                                          const std::set<std::string>& labels) {
  BasWeights<ExtReal> w;
  for (const auto& l : labels) {
    if (sr.kind() == NumericSemiring::Kind::Unreliability) {
      const double p = static_cast<double>(rng() % 101) / 100.0;
      w.alpha0.emplace(l, ExtReal(1.0 - p));
      w.alpha1.emplace(l, ExtReal(p));
      continue;
    }
    auto v = random_value(rng, sr);
    if (rng() % 2) {
      w.alpha0.emplace(l, sr.one());
      w.alpha1.emplace(l, v);
    } else {
      w.alpha0.emplace(l, v);
      w.alpha1.emplace(l, sr.one());
    }
  }
  return w;
}

inline BasWeights<Antichain> random_weights(std::mt19937_64& rng, const AntichainSemiring& sr,
                                            const std::set<std::string>& labels) {
  BasWeights<Antichain> w;
  for (const auto& l : labels) {
    if (rng() % 3) {
      w.alpha0.emplace(l, sr.one());
      w.alpha1.emplace(l, sr.singleton(l));
    } else {
      w.alpha0.emplace(l, sr.singleton(l + "'"));
      w.alpha1.emplace(l, sr.one());
    }
  }
  return w;
}

// Channel backend whose composition adds one to entry (0, 0): breaks the
// unit and associativity laws.
class BrokenBackend : public BoolStochBackend<NumericSemiring> {
 public:
  BrokenBackend() : BoolStochBackend<NumericSemiring>(NumericSemiring(NumericSemiring::Kind::MinCost)) {}

  Channel compose(const Channel& first, const Channel& second) const {
    auto m = BoolStochBackend<NumericSemiring>::compose(first, second);
    m.at(0, 0) = m.at(0, 0) + ExtReal(1.0);
    return m;
  }
};

inline RandomGraphOptions small_graphs() {
  RandomGraphOptions o;
  o.max_nodes = 10;
  o.max_bas = 4;
  o.max_gates = 5;
  o.label_pool = 4;
  return o;
}

}  // namespace atmet::testing
