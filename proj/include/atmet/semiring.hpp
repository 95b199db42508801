#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atmet/error.hpp"
#include "atmet/ext_real.hpp"

namespace atmet {

/// A commutative semiring (R, +, ·, 0, 1) with a backend-defined equality.
template <class S>
concept Semiring = requires(const S& s, const typename S::value_type& a) {
  typename S::value_type;
  { s.zero() } -> std::convertible_to<typename S::value_type>;
  { s.one() } -> std::convertible_to<typename S::value_type>;
  { s.plus(a, a) } -> std::convertible_to<typename S::value_type>;
  { s.times(a, a) } -> std::convertible_to<typename S::value_type>;
  { s.equal(a, a) } -> std::convertible_to<bool>;
  { s.is_absorbing() } -> std::convertible_to<bool>;
  { s.is_idempotent_plus() } -> std::convertible_to<bool>;
  { s.name() } -> std::convertible_to<std::string>;
  { s.format(a) } -> std::convertible_to<std::string>;
};

/// Absolute tolerance for semirings whose product is real multiplication.
inline constexpr double kRealTolerance = 1e-9;

/// The numeric metric semirings over [0, inf].
class NumericSemiring {
 public:
  using value_type = ExtReal;

  enum class Kind { MinCost, MinTimeParallel, MinTimeSequential, MaxChallenge, MaxProbability, Unreliability };

  explicit NumericSemiring(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }

  ExtReal zero() const {
    switch (kind_) {
      case Kind::MinCost:
      case Kind::MinTimeParallel:
      case Kind::MinTimeSequential:
      case Kind::MaxChallenge: return ExtReal::infinity();
      case Kind::MaxProbability:
      case Kind::Unreliability: return ExtReal(0.0);
    }
    return ExtReal(0.0);
  }

  ExtReal one() const {
    switch (kind_) {
      case Kind::MinCost:
      case Kind::MinTimeParallel:
      case Kind::MinTimeSequential: return ExtReal(0.0);
      case Kind::MaxChallenge: return ExtReal::infinity();
      case Kind::MaxProbability:
      case Kind::Unreliability: return ExtReal(1.0);
    }
    return ExtReal(1.0);
  }

  ExtReal plus(const ExtReal& a, const ExtReal& b) const {
    switch (kind_) {
      case Kind::MinCost:
      case Kind::MinTimeParallel:
      case Kind::MinTimeSequential: return min(a, b);
      case Kind::MaxChallenge:
      case Kind::MaxProbability: return max(a, b);
      case Kind::Unreliability: return a + b;
    }
    return a;
  }

  ExtReal times(const ExtReal& a, const ExtReal& b) const {
    switch (kind_) {
      case Kind::MinCost:
      case Kind::MinTimeSequential: return a + b;
      case Kind::MinTimeParallel:
      case Kind::MaxChallenge: return max(a, b);
      case Kind::MaxProbability:
      case Kind::Unreliability: return a * b;
    }
    return a;
  }

  /// Exact for min/max-based products, tolerance 1e-9 where · is real multiplication.
  bool equal(const ExtReal& a, const ExtReal& b) const {
    if (kind_ == Kind::MaxProbability || kind_ == Kind::Unreliability) return near(a, b, kRealTolerance);
    return a == b;
  }

  bool is_absorbing() const { return kind_ != Kind::MaxChallenge && kind_ != Kind::Unreliability; }
  bool is_idempotent_plus() const { return kind_ != Kind::Unreliability; }

  std::string name() const {
    switch (kind_) {
      case Kind::MinCost: return "mincost";
      case Kind::MinTimeParallel: return "mintime-par";
      case Kind::MinTimeSequential: return "mintime-seq";
      case Kind::MaxChallenge: return "maxchallenge";
      case Kind::MaxProbability: return "maxprob";
      case Kind::Unreliability: return "unrel";
    }
    return "?";
  }

  std::string format(const ExtReal& a) const { return a.to_string(); }

 private:
  Kind kind_;
};

inline const std::vector<std::string>& table1_names() {
  static const std::vector<std::string> names{"mincost", "mintime-par", "mintime-seq",
                                              "maxchallenge", "maxprob", "unrel"};
  return names;
}

/// Looks up one of the metric semirings by name.
inline NumericSemiring table1_semiring(std::string_view name) {
  using K = NumericSemiring::Kind;
  static const std::map<std::string, K, std::less<>> kinds{
      {"mincost", K::MinCost},           {"mintime-par", K::MinTimeParallel}, {"mintime-seq", K::MinTimeSequential},
      {"maxchallenge", K::MaxChallenge}, {"maxprob", K::MaxProbability},      {"unrel", K::Unreliability}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw Error(ErrorKind::UnknownSemiring, "unknown semiring '" + std::string(name) + "'");
  return NumericSemiring(it->second);
}

/// A set of basic attack step identifiers, kept sorted.
using AttackSet = std::set<std::string>;

inline std::string format_attack(const AttackSet& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& b : a) {
    out += first ? "" : ", ";
    out += b;
    first = false;
  }
  return out + "}";
}

inline bool is_subset(const AttackSet& a, const AttackSet& b) {
  return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// A set of pairwise ⊆-incomparable attacks.
class Antichain {
 public:
  Antichain() = default;

  const std::set<AttackSet>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  friend bool operator==(const Antichain&, const Antichain&) = default;
  friend auto operator<=>(const Antichain&, const Antichain&) = default;

 private:
  friend Antichain antichain_normalize(const std::set<AttackSet>& attacks);
  std::set<AttackSet> elements_;
};

/// The ⊆-minimal elements of `attacks`.
inline Antichain antichain_normalize(const std::set<AttackSet>& attacks) {
  Antichain out;
  for (const auto& a : attacks) {
    bool minimal = true;
    for (const auto& b : attacks) {
      if (b.size() < a.size() && is_subset(b, a)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.elements_.insert(a);
  }
  return out;
}

inline std::string format_antichain(const Antichain& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : a.elements()) {
    out += first ? "" : ", ";
    out += format_attack(e);
    first = false;
  }
  return out + "}";
}

/// Antichains of attacks over a finite universe with normalised union as +
/// and normalised pairwise union as ·.
class AntichainSemiring {
 public:
  using value_type = Antichain;

  explicit AntichainSemiring(std::set<std::string> universe = {}) : universe_(std::move(universe)) {}

  const std::set<std::string>& universe() const { return universe_; }

  Antichain zero() const { return {}; }
  Antichain one() const { return antichain_normalize({AttackSet{}}); }

  Antichain singleton(const std::string& b) const { return antichain_normalize({AttackSet{b}}); }

  Antichain plus(const Antichain& a, const Antichain& b) const {
    std::set<AttackSet> all = a.elements();
    all.insert(b.elements().begin(), b.elements().end());
    return antichain_normalize(all);
  }

  Antichain times(const Antichain& a, const Antichain& b) const {
    std::set<AttackSet> all;
    for (const auto& x : a.elements()) {
      for (const auto& y : b.elements()) {
        AttackSet u = x;
        u.insert(y.begin(), y.end());
        all.insert(std::move(u));
      }
    }
    return antichain_normalize(all);
  }

  bool equal(const Antichain& a, const Antichain& b) const { return a == b; }
  bool is_absorbing() const { return true; }
  bool is_idempotent_plus() const { return true; }
  std::string name() const { return "antichain"; }
  std::string format(const Antichain& a) const { return format_antichain(a); }

 private:
  std::set<std::string> universe_;
};

/// Multiset of attack sets: set -> multiplicity >= 1.
class MultisetOfSets {
 public:
  MultisetOfSets() = default;
  explicit MultisetOfSets(std::map<AttackSet, std::uint64_t> counts) {
    for (auto& [k, v] : counts) {
      if (v) counts_.emplace(k, v);
    }
  }

  const std::map<AttackSet, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(const AttackSet& a) const {
    auto it = counts_.find(a);
    return it == counts_.end() ? 0 : it->second;
  }

  friend bool operator==(const MultisetOfSets&, const MultisetOfSets&) = default;

 private:
  std::map<AttackSet, std::uint64_t> counts_;
};

inline std::string format_multiset(const MultisetOfSets& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [set, n] : m.counts()) {
    out += first ? "" : ", ";
    out += format_attack(set) + ":" + std::to_string(n);
    first = false;
  }
  return out + "}";
}

class MultisetSemiring {
 public:
  using value_type = MultisetOfSets;

  explicit MultisetSemiring(std::set<std::string> universe = {}) : universe_(std::move(universe)) {}

  MultisetOfSets zero() const { return {}; }
  MultisetOfSets one() const { return MultisetOfSets({{AttackSet{}, 1}}); }
  MultisetOfSets singleton(const std::string& b) const { return MultisetOfSets({{AttackSet{b}, 1}}); }

  MultisetOfSets plus(const MultisetOfSets& a, const MultisetOfSets& b) const {
    auto counts = a.counts();
    for (const auto& [k, v] : b.counts()) counts[k] += v;
    return MultisetOfSets(std::move(counts));
  }

  MultisetOfSets times(const MultisetOfSets& a, const MultisetOfSets& b) const {
    std::map<AttackSet, std::uint64_t> counts;
    for (const auto& [x, m] : a.counts()) {
      for (const auto& [y, n] : b.counts()) {
        AttackSet u = x;
        u.insert(y.begin(), y.end());
        counts[u] += m * n;
      }
    }
    return MultisetOfSets(std::move(counts));
  }

  bool equal(const MultisetOfSets& a, const MultisetOfSets& b) const { return a == b; }
  bool is_absorbing() const { return false; }
  bool is_idempotent_plus() const { return false; }
  std::string name() const { return "multiset"; }
  std::string format(const MultisetOfSets& m) const { return format_multiset(m); }

 private:
  std::set<std::string> universe_;
};

template <Semiring S, class Range>
typename S::value_type semiring_sum(const S& s, const Range& values) {
  auto acc = s.zero();
  for (const auto& v : values) acc = s.plus(acc, v);
  return acc;
}

template <Semiring S, class Range>
typename S::value_type semiring_product(const S& s, const Range& values) {
  auto acc = s.one();
  for (const auto& v : values) acc = s.times(acc, v);
  return acc;
}

/// Outcome of sampled semiring law checks; `failures` names each violated law
/// instance with its operands.
struct SemiringLawReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Samples triples (r, s, t) and checks the commutative semiring laws, plus
/// r + r·s = r when the semiring claims to be absorbing.
template <Semiring S, class Sampler>
SemiringLawReport check_semiring_laws(const S& sr, Sampler&& sample, std::size_t n_samples, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  SemiringLawReport rep;
  auto law = [&](bool ok, const std::string& what, const auto& r, const auto& s, const auto& t) {
    ++rep.checked;
    if (!ok) rep.failures.push_back(what + " r=" + sr.format(r) + " s=" + sr.format(s) + " t=" + sr.format(t));
  };
  for (std::size_t k = 0; k < n_samples; ++k) {
    auto r = sample(rng);
    auto s = sample(rng);
    auto t = sample(rng);
    law(sr.equal(sr.plus(sr.plus(r, s), t), sr.plus(r, sr.plus(s, t))), "plus associative", r, s, t);
    law(sr.equal(sr.times(sr.times(r, s), t), sr.times(r, sr.times(s, t))), "times associative", r, s, t);
    law(sr.equal(sr.plus(r, s), sr.plus(s, r)), "plus commutative", r, s, t);
    law(sr.equal(sr.times(r, s), sr.times(s, r)), "times commutative", r, s, t);
    law(sr.equal(sr.plus(r, sr.zero()), r), "zero unit", r, s, t);
    law(sr.equal(sr.times(r, sr.one()), r), "one unit", r, s, t);
    law(sr.equal(sr.times(r, sr.plus(s, t)), sr.plus(sr.times(r, s), sr.times(r, t))), "distributive", r, s, t);
    if (sr.is_absorbing()) law(sr.equal(sr.plus(r, sr.times(r, s)), r), "absorbing", r, s, t);
  }
  return rep;
}

/// Searches sampled pairs for a violation of r + r·s = r.
template <Semiring S, class Sampler>
std::optional<std::pair<typename S::value_type, typename S::value_type>> find_absorption_counterexample(
    const S& sr, Sampler&& sample, std::size_t n_samples, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < n_samples; ++k) {
    auto r = sample(rng);
    auto s = sample(rng);
    if (!sr.equal(sr.plus(r, sr.times(r, s)), r)) return std::make_pair(r, s);
  }
  return std::nullopt;
}

}  // namespace atmet
