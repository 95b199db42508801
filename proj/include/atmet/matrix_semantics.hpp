#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atmet/channel.hpp"
#include "atmet/function_semantics.hpp"
#include "atmet/semiring.hpp"
#include "atmet/term_graph.hpp"

namespace atmet {

/// A 2^out x 2^in matrix over V, dense and row-major. Row and column indices
/// are bit tuples read as binary integers, leftmost wire most significant.
template <class V>
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t in, std::size_t out, const V& fill)
      : in_(in), out_(out), data_((std::size_t{1} << out) * (std::size_t{1} << in), fill) {}

  std::size_t inputs() const { return in_; }
  std::size_t outputs() const { return out_; }
  std::size_t rows() const { return std::size_t{1} << out_; }
  std::size_t cols() const { return std::size_t{1} << in_; }

  const V& at(std::size_t row, std::size_t col) const { return data_[row * cols() + col]; }
  V& at(std::size_t row, std::size_t col) { return data_[row * cols() + col]; }

  const std::vector<V>& data() const { return data_; }

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  std::vector<V> data_;
};

/// Boolean-indexed matrices over a semiring: composition is the matrix
/// product, tensor the Kronecker product with the left operand as the
/// high-order factor.
template <Semiring S>
class BoolStochBackend {
 public:
  using Value = typename S::value_type;
  using Channel = BoolMatrix<Value>;

  static constexpr std::size_t kDefaultWidthCap = 20;

  explicit BoolStochBackend(S sr, std::size_t width_cap = kDefaultWidthCap) : sr_(std::move(sr)), cap_(width_cap) {}

  const S& semiring() const { return sr_; }
  std::size_t width_cap() const { return cap_; }

  Channel compose(const Channel& first, const Channel& second) const {
    if (first.outputs() != second.inputs()) {
      throw Error(ErrorKind::ArityMismatch, "cannot compose matrices " + to_string(arity(first)) + " and " +
                                                to_string(arity(second)));
    }
    Channel out = blank(first.inputs(), second.outputs());
    const auto bcols = nonzero_columns(second);
    for (std::size_t x = 0; x < first.cols(); ++x) {
      for (std::size_t z = 0; z < first.rows(); ++z) {
        const Value& a = first.at(z, x);
        if (is_zero(a)) continue;
        for (std::size_t y : bcols[z]) out.at(y, x) = sr_.plus(out.at(y, x), sr_.times(second.at(y, z), a));
      }
    }
    return out;
  }

  Channel tensor(const Channel& left, const Channel& right) const {
    Channel out = blank(left.inputs() + right.inputs(), left.outputs() + right.outputs());
    const auto rnz = nonzero_entries(right);
    for (std::size_t yl = 0; yl < left.rows(); ++yl) {
      for (std::size_t xl = 0; xl < left.cols(); ++xl) {
        const Value& a = left.at(yl, xl);
        if (is_zero(a)) continue;
        for (const auto& [yr, xr] : rnz) {
          out.at(yl * right.rows() + yr, xl * right.cols() + xr) = sr_.times(a, right.at(yr, xr));
        }
      }
    }
    return out;
  }

  /// compose(acc, tensor(atoms...)) computed column by column: each nonzero
  /// entry of `acc` is pushed through the atoms' nonzero columns.
  Channel compose_layer(const Channel& acc, const std::vector<Channel>& atoms) const {
    std::size_t in = 0, out = 0;
    for (const auto& a : atoms) {
      in += a.inputs();
      out += a.outputs();
    }
    if (in != acc.outputs()) {
      throw Error(ErrorKind::ArityMismatch, "layer with " + std::to_string(in) + " inputs after a channel with " +
                                                std::to_string(acc.outputs()) + " outputs");
    }
    Channel result = blank(acc.inputs(), out);
    // Per atom and input column: its nonzero (row, value) entries.
    ColumnTable cols(atoms.size());
    std::vector<std::size_t> out_bits;
    for (const auto& a : atoms) out_bits.push_back(a.outputs());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      cols[k].resize(atoms[k].cols());
      for (std::size_t y = 0; y < atoms[k].rows(); ++y) {
        for (std::size_t x = 0; x < atoms[k].cols(); ++x) {
          if (!is_zero(atoms[k].at(y, x))) cols[k][x].emplace_back(y, atoms[k].at(y, x));
        }
      }
    }
    std::vector<std::size_t> zpart(atoms.size());
    for (std::size_t x = 0; x < acc.cols(); ++x) {
      for (std::size_t z = 0; z < acc.rows(); ++z) {
        const Value& a = acc.at(z, x);
        if (is_zero(a)) continue;
        std::size_t rest = z;
        for (std::size_t k = atoms.size(); k-- > 0;) {
          zpart[k] = rest & (atoms[k].cols() - 1);
          rest >>= atoms[k].inputs();
        }
        push(result, x, 0, a, 0, cols, out_bits, zpart);
      }
    }
    return result;
  }

  Channel ident(std::size_t n) const {
    Channel out = blank(n, n);
    for (std::size_t x = 0; x < out.cols(); ++x) out.at(x, x) = sr_.one();
    return out;
  }

  /// Moves the first i wires after the last j.
  Channel swap(std::size_t i, std::size_t j) const {
    Channel out = blank(i + j, i + j);
    const std::size_t low = (std::size_t{1} << j) - 1;
    for (std::size_t x = 0; x < out.cols(); ++x) {
      const std::size_t a = x >> j;
      const std::size_t b = x & low;
      out.at((b << i) | a, x) = sr_.one();
    }
    return out;
  }

  Channel copy() const {
    Channel out = blank(1, 2);
    out.at(0, 0) = sr_.one();
    out.at(3, 1) = sr_.one();
    return out;
  }

  Channel del() const {
    Channel out = blank(1, 0);
    out.at(0, 0) = sr_.one();
    out.at(0, 1) = sr_.one();
    return out;
  }

  /// A matrix from explicit rows; `in`/`out` give the wire counts.
  Channel from_rows(std::size_t in, std::size_t out, const std::vector<std::vector<Value>>& rows) const {
    Channel m = blank(in, out);
    if (rows.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "wrong number of rows");
    for (std::size_t y = 0; y < m.rows(); ++y) {
      if (rows[y].size() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "wrong number of columns");
      for (std::size_t x = 0; x < m.cols(); ++x) m.at(y, x) = rows[y][x];
    }
    return m;
  }

  Arity arity(const Channel& m) const { return {m.inputs(), m.outputs()}; }

  bool equal(const Channel& a, const Channel& b) const {
    if (a.inputs() != b.inputs() || a.outputs() != b.outputs()) return false;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
      if (!sr_.equal(a.data()[k], b.data()[k])) return false;
    }
    return true;
  }

  std::string describe(const Channel& m) const {
    std::string out;
    for (std::size_t y = 0; y < m.rows(); ++y) {
      out += y ? " / " : "";
      for (std::size_t x = 0; x < m.cols(); ++x) out += (x ? " " : "") + sr_.format(m.at(y, x));
    }
    return "(" + out + ")";
  }

  Channel blank(std::size_t in, std::size_t out) const {
    if (in > cap_ || out > cap_) {
      throw Error(ErrorKind::WidthCapExceeded, "matrix with " + std::to_string(std::max(in, out)) +
                                                   " wires exceeds cap " + std::to_string(cap_));
    }
    return Channel(in, out, sr_.zero());
  }

  bool is_zero(const Value& v) const { return sr_.equal(v, zero_); }

 private:
  using ColumnTable = std::vector<std::vector<std::vector<std::pair<std::size_t, Value>>>>;

  void push(Channel& result, std::size_t x, std::size_t k, const Value& v, std::size_t row, const ColumnTable& cols,
            const std::vector<std::size_t>& out_bits, const std::vector<std::size_t>& zpart) const {
    if (k == cols.size()) {
      result.at(row, x) = sr_.plus(result.at(row, x), v);
      return;
    }
    for (const auto& [y, w] : cols[k][zpart[k]]) {
      push(result, x, k + 1, sr_.times(v, w), (row << out_bits[k]) | y, cols, out_bits, zpart);
    }
  }

  std::vector<std::vector<std::size_t>> nonzero_columns(const Channel& m) const {
    std::vector<std::vector<std::size_t>> out(m.cols());
    for (std::size_t y = 0; y < m.rows(); ++y) {
      for (std::size_t x = 0; x < m.cols(); ++x) {
        if (!is_zero(m.at(y, x))) out[x].push_back(y);
      }
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> nonzero_entries(const Channel& m) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t y = 0; y < m.rows(); ++y) {
      for (std::size_t x = 0; x < m.cols(); ++x) {
        if (!is_zero(m.at(y, x))) out.emplace_back(y, x);
      }
    }
    return out;
  }

  S sr_;
  std::size_t cap_;
  Value zero_ = sr_.zero();
};

/// Every column sums to one.
template <Semiring S>
bool is_stochastic(const BoolMatrix<typename S::value_type>& m, const S& sr) {
  for (std::size_t x = 0; x < m.cols(); ++x) {
    auto sum = sr.zero();
    for (std::size_t y = 0; y < m.rows(); ++y) sum = sr.plus(sum, m.at(y, x));
    if (!sr.equal(sum, sr.one())) return false;
  }
  return true;
}

/// Weight pair per label: alpha0 for "not performed", alpha1 for "performed".
template <class V>
struct BasWeights {
  std::map<std::string, V> alpha0;
  std::map<std::string, V> alpha1;
};

/// Output 1 iff all inputs are 1 (AND) or some input is 1 (OR).
template <Semiring S>
BoolMatrix<typename S::value_type> gate_matrix(const BoolStochBackend<S>& b, const Symbol& s) {
  auto m = b.blank(s.arity, 1);
  const std::size_t all = m.cols() - 1;
  for (std::size_t x = 0; x < m.cols(); ++x) {
    const bool fire = s.kind == SymbolKind::And ? x == all : x != 0;
    m.at(fire ? 1 : 0, x) = b.semiring().one();
  }
  return m;
}

template <Semiring S>
Interpretation<BoolStochBackend<S>> stoch_interpretation(const S& sr, BasWeights<typename S::value_type> w,
                                                         std::size_t width_cap =
                                                             BoolStochBackend<S>::kDefaultWidthCap) {
  for (const auto& [label, a0] : w.alpha0) {
    auto it = w.alpha1.find(label);
    if (it == w.alpha1.end()) throw Error(ErrorKind::MissingLabel, "no alpha1 weight for label '" + label + "'");
    if (!sr.equal(sr.plus(a0, it->second), sr.one())) {
      throw Error(ErrorKind::WeightNotStochastic, "weights of '" + label + "' sum to " +
                                                      sr.format(sr.plus(a0, it->second)) + ", not " +
                                                      sr.format(sr.one()));
    }
  }
  for (const auto& [label, _] : w.alpha1) {
    if (!w.alpha0.count(label)) throw Error(ErrorKind::MissingLabel, "no alpha0 weight for label '" + label + "'");
  }
  BoolStochBackend<S> backend(sr, width_cap);
  auto assign = [backend, w = std::move(w)](const Symbol& s) -> BoolMatrix<typename S::value_type> {
    switch (s.kind) {
      case SymbolKind::Label: {
        auto it = w.alpha0.find(s.name);
        if (it == w.alpha0.end()) throw Error(ErrorKind::MissingLabel, "no weights for label '" + s.name + "'");
        auto m = backend.blank(0, 1);
        m.at(0, 0) = it->second;
        m.at(1, 0) = w.alpha1.at(s.name);
        return m;
      }
      case SymbolKind::And:
      case SymbolKind::Or: return gate_matrix(backend, s);
      case SymbolKind::Generic: break;
    }
    throw Error(ErrorKind::MissingSymbol, "no matrix for symbol '" + s.name + "'");
  };
  return {backend, assign};
}

/// Second component of a 2 x 1 result vector.
template <class V>
V metric_value(const BoolMatrix<V>& v) {
  if (v.inputs() != 0 || v.outputs() != 1) {
    throw Error(ErrorKind::ShapeMismatch, "expected a 2x1 vector, got " + std::to_string(v.rows()) + "x" +
                                              std::to_string(v.cols()));
  }
  return v.at(1, 0);
}

/// Weights (one, alpha(b)): performing b costs alpha(b), not performing it is free.
/// A non-absorbing semiring is reported through `warnings` and evaluation proceeds.
template <Semiring S>
Interpretation<BoolStochBackend<S>> propositional_interpretation(
    const S& sr, const Attribution<S>& alpha, std::vector<Error>* warnings = nullptr,
    std::size_t width_cap = BoolStochBackend<S>::kDefaultWidthCap) {
  if (!sr.is_absorbing() && warnings) {
    warnings->emplace_back(ErrorKind::NotAbsorbing,
                           "semiring " + sr.name() + " is not absorbing; the minimal-attack formula does not apply");
  }
  BasWeights<typename S::value_type> w;
  for (const auto& [label, a] : alpha) {
    w.alpha0.emplace(label, sr.one());
    w.alpha1.emplace(label, a);
  }
  return stoch_interpretation(sr, std::move(w), width_cap);
}

/// Weights (1 - p(b), p(b)) over the unreliability semiring.
inline Interpretation<BoolStochBackend<NumericSemiring>> unreliability_interpretation(
    const std::map<std::string, double>& p, std::size_t width_cap = BoolStochBackend<NumericSemiring>::kDefaultWidthCap) {
  NumericSemiring sr(NumericSemiring::Kind::Unreliability);
  BasWeights<ExtReal> w;
  for (const auto& [label, q] : p) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorKind::ProbabilityOutOfRange, "probability of '" + label + "' is " + std::to_string(q));
    }
    w.alpha0.emplace(label, ExtReal(1.0 - q));
    w.alpha1.emplace(label, ExtReal(q));
  }
  return stoch_interpretation(sr, std::move(w), width_cap);
}

/// Labels of all basic attack step nodes; throws DuplicateBasLabel when two
/// nodes carry the same label.
inline std::set<std::string> unique_bas_labels(const TermGraph& t) {
  std::set<std::string> out;
  for (const auto& [n, nd] : t.node_map()) {
    if (nd.symbol && nd.symbol->is_label() && !out.insert(nd.symbol->name).second) {
      throw Error(ErrorKind::DuplicateBasLabel, "label '" + nd.symbol->name + "' is used by more than one node");
    }
  }
  return out;
}

/// Minimal successful attacks, via the propositional interpretation over
/// antichains with alpha(b) = {{b}}.
inline Antichain minsuc_semantics(const TermGraph& t,
                                  std::size_t width_cap = BoolStochBackend<AntichainSemiring>::kDefaultWidthCap) {
  require_attack_tree(t);
  const auto labels = unique_bas_labels(t);
  AntichainSemiring sr(labels);
  Attribution<AntichainSemiring> alpha;
  for (const auto& b : labels) alpha.emplace(b, sr.singleton(b));
  return metric_value(evaluate(t, propositional_interpretation(sr, alpha, nullptr, width_cap)));
}

/// `(a, b, c)` for vectors, rows separated by ` / ` otherwise.
template <Semiring S>
std::string format_matrix(const BoolMatrix<typename S::value_type>& m, const S& sr) {
  std::string out = "(";
  for (std::size_t y = 0; y < m.rows(); ++y) {
    for (std::size_t x = 0; x < m.cols(); ++x) {
      if (x) out += m.cols() == 1 ? ", " : " ";
      out += sr.format(m.at(y, x));
    }
    if (y + 1 < m.rows()) out += m.cols() == 1 ? ", " : " / ";
  }
  return out + ")";
}

}  // namespace atmet
