#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "atmet/decomposition.hpp"
#include "atmet/frontend/emit.hpp"
#include "atmet/frontend/parser.hpp"
#include "atmet/function_semantics.hpp"
#include "atmet/matrix_semantics.hpp"
#include "atmet/oracle.hpp"

namespace atmet::frontend {

enum ExitCode : int { kOk = 0, kSemanticError = 1, kParseError = 2, kCapExceeded = 3 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownNodeRef:
    case ErrorKind::DuplicateNodeDecl:
    case ErrorKind::ValueParseError: return kParseError;
    case ErrorKind::WidthCapExceeded:
    case ErrorKind::EnumerationCapExceeded: return kCapExceeded;
    default: return kSemanticError;
  }
}

/// Settings shared by eval, oracle and compare.
struct EvalOptions {
  std::string semantics;
  std::string semiring = "mincost";
  std::string attr_file;
  std::string assign_file;
  std::size_t max_width = 20;
  std::size_t max_bas = oracle::kEnumerationCap;
};

/// A computed semantics value in printable form. Numeric results keep their
/// entries so two results can be compared within the semiring's tolerance.
struct Outcome {
  std::string semantics;
  Arity arity;
  std::string text;
  nlohmann::json value;
  std::optional<std::vector<ExtReal>> numbers;
  double tolerance = 0;
};

inline bool same_outcome(const Outcome& a, const Outcome& b) {
  if (a.numbers && b.numbers) {
    if (a.numbers->size() != b.numbers->size()) return false;
    const double tol = std::max(a.tolerance, b.tolerance);
    for (std::size_t k = 0; k < a.numbers->size(); ++k) {
      if (!near((*a.numbers)[k], (*b.numbers)[k], tol)) return false;
    }
    return true;
  }
  return a.text == b.text;
}

namespace detail {

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An error raised while reading the file at `path`.
class SourcedError : public Error {
 public:
  SourcedError(std::string path, const Error& e) : Error(e), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline std::string diagnostic(const std::string& path, const Error& e) {
  std::string out = path;
  if (e.location()) out += ":" + std::to_string(e.location()->line) + ":" + std::to_string(e.location()->column);
  return out + ": " + std::string(to_string(e.kind())) + ": " + e.message();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string join_values(const std::vector<ExtReal>& vs) {
  if (vs.size() == 1) return vs.front().to_string();
  std::string s = "(";
  for (std::size_t k = 0; k < vs.size(); ++k) s += (k ? ", " : "") + vs[k].to_string();
  return s + ")";
}

inline nlohmann::json json_values(const std::vector<ExtReal>& vs) {
  if (vs.size() == 1) return to_json(vs.front());
  auto a = nlohmann::json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline std::string bits_text(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

class Session {
 public:
  Session(const ComponentDoc& doc, EvalOptions opt) : doc_(doc), g_(doc.graph), opt_(std::move(opt)) {}

  Outcome engine() { return run(true); }
  Outcome oracle() { return run(false); }

  std::vector<Error> warnings;

 private:
  Outcome run(bool engine) {
    const auto& s = opt_.semantics;
    if (s == "bottom-up") return bottom_up(engine);
    if (s == "propositional") return propositional(engine);
    if (s == "stochastic") return stochastic(engine);
    if (s == "unreliability") return unreliability(engine);
    if (s == "boolean") return boolean(engine);
    if (s == "minsuc") return minsuc(engine);
    if (s == "multiset") return multiset(engine);
    throw Error(ErrorKind::MissingSymbol, "unknown semantics '" + s + "'");
  }

  AttributionDoc attribution(const std::string& path, const char* flag) {
    if (path.empty()) throw Error(ErrorKind::MissingLabel, std::string("semantics '") + opt_.semantics + "' needs " + flag);
    const auto labels = g_.signature().labels();
    try {
      return parse_attribution(read_file(path), &labels);
    } catch (const Error& e) {
      throw SourcedError(path, e);
    }
  }

  Attribution<NumericSemiring> single_values(const AttributionDoc& doc) {
    if (!doc.all_single()) throw Error(ErrorKind::ShapeMismatch, "expected one value per label, found a weight pair");
    Attribution<NumericSemiring> out;
    for (const auto& [label, vs] : doc.entries) out.emplace(label, vs.front());
    return out;
  }

  Outcome numeric(const std::string& sem, std::vector<ExtReal> vs, double tol) {
    Outcome o;
    o.semantics = sem;
    o.arity = g_.arity();
    o.text = join_values(vs);
    o.value = json_values(vs);
    o.numbers = std::move(vs);
    o.tolerance = tol;
    return o;
  }

  double tolerance(const NumericSemiring& sr) const {
    return sr.kind() == NumericSemiring::Kind::MaxProbability || sr.kind() == NumericSemiring::Kind::Unreliability
               ? kRealTolerance
               : 0.0;
  }

  // 0 -> 1 results are reported as the metric (second component); other
  // shapes as the whole matrix in binary-integer order.
  Outcome matrix_outcome(const std::string& sem, const BoolMatrix<ExtReal>& m, const NumericSemiring& sr) {
    if (m.inputs() == 0 && m.outputs() == 1) return numeric(sem, {metric_value(m)}, tolerance(sr));
    Outcome o = numeric(sem, m.data(), tolerance(sr));
    o.text = format_matrix(m, sr);
    o.value = to_json(m);
    return o;
  }

  Outcome bottom_up(bool engine) {
    const auto sr = table1_semiring(opt_.semiring);
    const auto alpha = single_values(attribution(opt_.attr_file, "--attr"));
    if (engine) {
      if (!g_.inputs().empty()) {
        throw Error(ErrorKind::NotAnAttackTree, "bottom-up evaluation needs a component without inputs, got " +
                                                    to_string(g_.arity()));
      }
      auto f = evaluate(g_, bottom_up_interpretation(sr, alpha));
      return numeric("bottom-up", f({}), tolerance(sr));
    }
    return numeric("bottom-up", {eval_bottom_up_recursive(g_, sr, alpha)}, tolerance(sr));
  }

  Outcome propositional(bool engine) {
    const auto sr = table1_semiring(opt_.semiring);
    const auto alpha = single_values(attribution(opt_.attr_file, "--attr"));
    if (engine) {
      return matrix_outcome("propositional", evaluate(g_, propositional_interpretation(sr, alpha, &warnings,
                                                                                         opt_.max_width)),
                            sr);
    }
    if (!sr.is_absorbing()) {
      warnings.emplace_back(ErrorKind::NotAbsorbing, "semiring " + sr.name() + " is not absorbing");
    }
    if (g_.arity() == Arity{0, 1}) {
      return numeric("propositional", {oracle::prop_metric_by_formula(g_, sr, alpha, opt_.max_bas)}, tolerance(sr));
    }
    BasWeights<ExtReal> w;
    for (const auto& [label, a] : alpha) {
      w.alpha0.emplace(label, sr.one());
      w.alpha1.emplace(label, a);
    }
    return matrix_outcome("propositional", oracle::matrix_by_formula(g_, sr, w, opt_.max_bas), sr);
  }

  Outcome stochastic(bool engine) {
    const auto sr = table1_semiring(opt_.semiring);
    const auto doc = attribution(opt_.attr_file, "--attr");
    if (!doc.all_pairs()) throw Error(ErrorKind::ShapeMismatch, "stochastic semantics needs a weight pair per label");
    BasWeights<ExtReal> w;
    for (const auto& [label, vs] : doc.entries) {
      w.alpha0.emplace(label, vs[0]);
      w.alpha1.emplace(label, vs[1]);
    }
    if (engine) return matrix_outcome("stochastic", evaluate(g_, stoch_interpretation(sr, w, opt_.max_width)), sr);
    return matrix_outcome("stochastic", oracle::matrix_by_formula(g_, sr, w, opt_.max_bas), sr);
  }

  Outcome unreliability(bool engine) {
    const auto alpha = single_values(attribution(opt_.attr_file, "--attr"));
    std::map<std::string, double> p;
    for (const auto& [label, v] : alpha) {
      if (v.is_infinite() || v.value() > 1.0) {
        throw Error(ErrorKind::ProbabilityOutOfRange, "probability of '" + label + "' is " + v.to_string());
      }
      p.emplace(label, v.value());
    }
    const NumericSemiring sr(NumericSemiring::Kind::Unreliability);
    if (engine) return matrix_outcome("unreliability", evaluate(g_, unreliability_interpretation(p, opt_.max_width)), sr);
    if (g_.arity() == Arity{0, 1}) {
      return numeric("unreliability", {ExtReal(oracle::unreliability_by_enumeration(g_, p, opt_.max_bas))},
                     kRealTolerance);
    }
    BasWeights<ExtReal> w;
    for (const auto& [label, q] : p) {
      w.alpha0.emplace(label, ExtReal(1.0 - q));
      w.alpha1.emplace(label, ExtReal(q));
    }
    return matrix_outcome("unreliability", oracle::matrix_by_formula(g_, sr, w, opt_.max_bas), sr);
  }

  Outcome boolean(bool engine) {
    const auto doc = attribution(opt_.assign_file, "--assign");
    std::map<std::string, bool> truth;
    for (const auto& [label, vs] : doc.entries) {
      if (vs.size() != 1 || !(vs[0] == ExtReal(0.0) || vs[0] == ExtReal(1.0))) {
        throw Error(ErrorKind::ValueParseError, "truth value of '" + label + "' must be 0 or 1");
      }
      truth.emplace(label, vs[0] == ExtReal(1.0));
    }
    const std::size_t i = g_.inputs().size();
    std::function<std::vector<bool>(const std::vector<bool>&)> run;
    if (engine) {
      auto f = evaluate(g_, boolean_interpretation(truth));
      run = [f](const std::vector<bool>& x) {
        std::vector<Bit> in(x.begin(), x.end());
        auto y = f(in);
        return std::vector<bool>(y.begin(), y.end());
      };
    } else {
      oracle::Attack a;
      for (NodeId v : oracle::bas_nodes(g_)) {
        auto it = truth.find(g_.symbol(v)->name);
        if (it == truth.end()) throw Error(ErrorKind::MissingLabel, "no truth value for label '" + g_.symbol(v)->name + "'");
        a[v] = it->second;
      }
      run = [this, a](const std::vector<bool>& x) { return oracle::structure_function(g_, a, x); };
    }
    Outcome o;
    o.semantics = "boolean";
    o.arity = g_.arity();
    if (i == 0) {
      const auto y = run({});
      if (y.size() == 1) {
        o.text = y[0] ? "1" : "0";
        o.value = y[0] ? 1 : 0;
      } else {
        o.text = "(";
        o.value = nlohmann::json::array();
        for (std::size_t k = 0; k < y.size(); ++k) {
          o.text += std::string(k ? ", " : "") + (y[k] ? "1" : "0");
          o.value.push_back(y[k] ? 1 : 0);
        }
        o.text += ")";
      }
      return o;
    }
    o.value = nlohmann::json::array();
    for (std::size_t x = 0; x < (std::size_t{1} << i); ++x) {
      const auto in = oracle::detail::index_to_bits(x, i);
      const auto y = run(in);
      o.text += (x ? "\n" : "") + bits_text(in) + " -> " + bits_text(y);
      o.value.push_back({{"in", bits_text(in)}, {"out", bits_text(y)}});
    }
    return o;
  }

  Outcome minsuc(bool engine) {
    const Antichain a = engine ? minsuc_semantics(g_, opt_.max_width) : oracle::minsuc(g_, opt_.max_bas);
    Outcome o;
    o.semantics = "minsuc";
    o.arity = g_.arity();
    o.text = format_antichain(a);
    o.value = to_json(a);
    return o;
  }

  Outcome multiset(bool engine) {
    MultisetOfSets m;
    if (engine) {
      require_attack_tree(g_);
      const auto labels = bas_labels(g_);
      MultisetSemiring sr(labels);
      Attribution<MultisetSemiring> alpha;
      for (const auto& b : labels) alpha.emplace(b, sr.singleton(b));
      m = evaluate(g_, bottom_up_interpretation(sr, alpha))({}).front();
    } else {
      m = multiset_semantics(g_);
    }
    Outcome o;
    o.semantics = "multiset";
    o.arity = g_.arity();
    o.text = format_multiset(m);
    o.value = to_json(m);
    return o;
  }

  const ComponentDoc& doc_;
  const TermGraph& g_;
  EvalOptions opt_;
};

inline nlohmann::json outcome_json(const Outcome& o) {
  return {{"arity", {o.arity.inputs, o.arity.outputs}}, {"semantics", o.semantics}, {"value", o.value}};
}

}  // namespace detail

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attack tree metric engine", "atmet"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  EvalOptions opt;

  auto* validate = app.add_subcommand("validate", "Check that a component file is well formed");
  auto* decompose_cmd = app.add_subcommand("decompose", "Print a layered decomposition into atoms");
  auto* dot = app.add_subcommand("dot", "Print the component as a Graphviz digraph");
  auto* eval = app.add_subcommand("eval", "Evaluate a semantics compositionally");
  auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate a semantics by brute-force enumeration");
  auto* compare = app.add_subcommand("compare", "Run eval and oracle and compare the results");

  for (auto* sub : {validate, decompose_cmd, dot, eval, oracle_cmd, compare}) {
    sub->add_option("FILE", file, "Component file")->required();
  }
  decompose_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  for (auto* sub : {eval, oracle_cmd, compare}) {
    sub->add_option("--semantics", opt.semantics, "Semantics to compute")
        ->required()
        ->check(CLI::IsMember(
            {"bottom-up", "propositional", "stochastic", "unreliability", "boolean", "minsuc", "multiset"}));
    sub->add_option("--semiring", opt.semiring, "Metric semiring (mincost, mintime-par, mintime-seq, "
                                                "maxchallenge, maxprob, unrel)");
    sub->add_option("--attr", opt.attr_file, "Attribution file");
    sub->add_option("--assign", opt.assign_file, "Truth assignment file");
    sub->add_option("--max-width", opt.max_width, "Largest number of wires for matrix evaluation");
    sub->add_option("--max-bas", opt.max_bas, "Largest number of basic attack steps to enumerate");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  std::optional<ComponentDoc> doc;
  try {
    doc = parse_component(detail::read_file(file));
    if (validate->parsed()) {
      const auto& g = doc->graph;
      out << "valid: component " << doc->name << ", arity " << to_string(g.arity()) << ", " << g.node_count()
          << " nodes, " << oracle::bas_nodes(g).size() << " basic attack steps\n";
      return kOk;
    }
    if (dot->parsed()) {
      out << to_dot(*doc);
      return kOk;
    }
    if (decompose_cmd->parsed()) {
      const auto layers = decompose(doc->graph);
      if (format == "json") {
        nlohmann::json j{{"arity", {doc->graph.arity().inputs, doc->graph.arity().outputs}},
                         {"width", decomposition_width(layers)},
                         {"layers", to_json(layers)}};
        out << j.dump() << "\n";
      } else {
        out << to_text(layers) << "\n";
      }
      return kOk;
    }
    detail::Session session(*doc, opt);
    auto flush_warnings = [&] {
      for (const auto& w : session.warnings) err << "warning: " << w.message() << "\n";
      session.warnings.clear();
    };
    if (eval->parsed() || oracle_cmd->parsed()) {
      const Outcome o = eval->parsed() ? session.engine() : session.oracle();
      flush_warnings();
      out << (format == "json" ? detail::outcome_json(o).dump() : o.text) << "\n";
      return kOk;
    }
    const Outcome a = session.engine();
    const Outcome b = session.oracle();
    flush_warnings();
    const bool same = same_outcome(a, b);
    if (format == "json") {
      nlohmann::json j{{"arity", {a.arity.inputs, a.arity.outputs}},
                       {"semantics", a.semantics},
                       {"eval", a.value},
                       {"oracle", b.value},
                       {"equal", same}};
      out << j.dump() << "\n";
    } else {
      out << "eval:   " << a.text << "\noracle: " << b.text << "\n" << (same ? "EQUAL" : "DIFF") << "\n";
    }
    return same ? kOk : kSemanticError;
  } catch (const detail::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const detail::SourcedError& e) {
    err << detail::diagnostic(e.path(), e) << "\n";
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    err << detail::diagnostic(file, e) << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace atmet::frontend
