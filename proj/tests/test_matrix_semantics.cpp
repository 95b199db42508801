#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace atmet;
using namespace atmet::testing;

namespace {

template <Semiring S>
void expect_matrix_eq(const BoolMatrix<typename S::value_type>& a, const BoolMatrix<typename S::value_type>& b,
                      const S& sr) {
  ASSERT_EQ(a.inputs(), b.inputs());
  ASSERT_EQ(a.outputs(), b.outputs());
  for (std::size_t y = 0; y < a.rows(); ++y) {
    for (std::size_t x = 0; x < a.cols(); ++x) {
      EXPECT_TRUE(sr.equal(a.at(y, x), b.at(y, x)))
          << "entry (" << y << ", " << x << "): " << sr.format(a.at(y, x)) << " vs " << sr.format(b.at(y, x));
    }
  }
}

}  // namespace

TEST(Structural, CopyDelSwap) {
  BoolStochBackend<NumericSemiring> b(mincost());
  EXPECT_EQ(format_matrix(b.copy(), mincost()), "(0 inf / inf inf / inf inf / inf 0)");
  EXPECT_EQ(format_matrix(b.del(), mincost()), "(0 0)");
  EXPECT_EQ(format_matrix(b.swap(1, 1), mincost()), "(0 inf inf inf / inf inf 0 inf / inf 0 inf inf / inf inf inf 0)");
  EXPECT_EQ(format_matrix(b.ident(0), mincost()), "(0)");
}

TEST(Structural, KroneckerLeftIsHighOrder) {
  BoolStochBackend<NumericSemiring> b(maxprob());
  auto p = b.blank(0, 1);
  p.at(0, 0) = 0.2;
  p.at(1, 0) = 0.8;
  auto one = b.blank(0, 1);
  one.at(1, 0) = 1.0;
  auto t = b.tensor(p, one);
  EXPECT_EQ(t.at(3, 0), ExtReal(0.8));
  EXPECT_EQ(t.at(1, 0), ExtReal(0.2));
  EXPECT_EQ(t.at(2, 0), ExtReal(0.0));
}

TEST(Stochastic, Examples) {
  BoolStochBackend<NumericSemiring> b(mincost());
  EXPECT_TRUE(is_stochastic(b.copy(), mincost()));
  EXPECT_TRUE(is_stochastic(b.del(), mincost()));
  auto v = b.blank(0, 1);
  v.at(0, 0) = 0.0;
  v.at(1, 0) = 30.0;
  EXPECT_TRUE(is_stochastic(v, mincost()));
  v.at(0, 0) = 5.0;
  EXPECT_FALSE(is_stochastic(v, mincost()));
  BoolStochBackend<NumericSemiring> u(unrel());
  auto w = u.blank(0, 1);
  w.at(0, 0) = 0.3;
  w.at(1, 0) = 0.7;
  EXPECT_TRUE(is_stochastic(w, unrel()));
  w.at(1, 0) = 0.6;
  EXPECT_FALSE(is_stochastic(w, unrel()));
}

TEST(Gates, AndMatrixOverMinCost) {
  BoolStochBackend<NumericSemiring> b(mincost());
  auto sig = room_signature();
  EXPECT_EQ(format_matrix(gate_matrix(b, sig.lookup("AND_2")), mincost()), "(0 0 0 inf / inf inf inf 0)");
  EXPECT_EQ(format_matrix(gate_matrix(b, sig.lookup("OR_2")), mincost()), "(0 inf inf inf / inf 0 0 0)");
}

TEST(Propositional, Room) {
  auto v = evaluate(room(), propositional_interpretation(mincost(), room_costs()));
  EXPECT_EQ(format_matrix(v, mincost()), "(0, 100)");
  EXPECT_EQ(metric_value(v), ExtReal(100.0));
}

TEST(Propositional, SubComponentVector) {
  auto interp = propositional_interpretation(mincost(), room_costs());
  auto v = evaluate(room_sub(), interp);
  EXPECT_EQ(format_matrix(v, mincost()), "(0, 80, 30, 100)");
  auto root = interp.backend.compose(v, gate_matrix(interp.backend, room_signature().lookup("AND_2")));
  EXPECT_EQ(format_matrix(root, mincost()), "(0, 100)");
}

TEST(Propositional, DuplicatedStep) {
  auto v = evaluate(room_duplicated(), propositional_interpretation(mincost(), room_costs()));
  EXPECT_EQ(metric_value(v), ExtReal(110.0));
}

TEST(Propositional, NonAbsorbingWarning) {
  std::vector<Error> warnings;
  auto sr = table1_semiring("maxchallenge");
  Attribution<NumericSemiring> alpha{{"D", 3.0}, {"F", 1.0}, {"S", 2.0}};
  EXPECT_NO_THROW(propositional_interpretation(sr, alpha, &warnings));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings.front().kind(), ErrorKind::NotAbsorbing);
}

TEST(Stochastic, WeightsMustSumToOne) {
  BasWeights<ExtReal> w;
  w.alpha0 = {{"D", 5.0}};
  w.alpha1 = {{"D", 3.0}};
  try {
    stoch_interpretation(mincost(), w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WeightNotStochastic);
  }
  w.alpha0 = {{"D", 0.0}};
  EXPECT_NO_THROW(stoch_interpretation(mincost(), w));
}

TEST(Stochastic, MetricValueShape) {
  BoolStochBackend<NumericSemiring> b(mincost());
  try {
    metric_value(b.copy());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(Unreliability, HandCases) {
  auto sig = Signature::attack_tree({"a", "b"});
  NodeId a{0}, b{1}, r{2};
  auto tree = [&](const std::string& gate) {
    return make_term_graph({a, b, r}, {}, {r}, {{a, "a"}, {b, "b"}, {r, gate}}, {{r, {a, b}}}, sig);
  };
  auto interp = unreliability_interpretation({{"a", 0.5}, {"b", 0.5}});
  EXPECT_EQ(metric_value(evaluate(tree("AND_2"), interp)), ExtReal(0.25));
  EXPECT_EQ(metric_value(evaluate(tree("OR_2"), interp)), ExtReal(0.75));
}

TEST(Unreliability, Room) {
  std::map<std::string, double> p{{"D", 0.2}, {"F", 0.5}, {"S", 0.4}};
  auto v = metric_value(evaluate(room(), unreliability_interpretation(p)));
  EXPECT_NEAR(v.value(), oracle::unreliability_by_enumeration(room(), p), 1e-12);
  EXPECT_NEAR(v.value(), 0.5 + 0.5 * 0.2 * 0.4, 1e-12);
}

TEST(Unreliability, RejectsBadProbability) {
  try {
    unreliability_interpretation({{"D", 1.5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProbabilityOutOfRange);
  }
}

TEST(MinSuc, Room) {
  EXPECT_EQ(minsuc_semantics(room()), antichain_normalize({{"F"}, {"D", "S"}}));
  EXPECT_EQ(minsuc_semantics(room()), oracle::minsuc(room()));
}

TEST(MinSuc, DistinctCopiesOfAStep) {
  auto sig = Signature::attack_tree({"D", "F1", "F2", "S"});
  NodeId D{0}, F1{1}, F2{2}, S{3}, t{4}, d{5}, r{6};
  auto tree = make_term_graph({D, F1, F2, S, t, d, r}, {}, {r},
                              {{D, "D"}, {F1, "F1"}, {F2, "F2"}, {S, "S"}, {t, "OR_2"}, {d, "OR_2"}, {r, "AND_2"}},
                              {{t, {D, F1}}, {d, {F2, S}}, {r, {t, d}}}, sig);
  auto want = antichain_normalize({{"F1", "F2"}, {"D", "S"}, {"F1", "S"}, {"D", "F2"}});
  EXPECT_EQ(minsuc_semantics(tree), want);
  EXPECT_EQ(oracle::minsuc(tree), want);
}

TEST(MinSuc, DuplicateLabelsRejected) {
  try {
    minsuc_semantics(room_duplicated());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateBasLabel);
  }
}

TEST(MinSuc, RandomTreesAgreeWithOracle) {
  std::mt19937_64 rng(41);
  RandomGraphOptions opt;
  opt.unique_labels = true;
  for (int k = 0; k < 100; ++k) {
    auto t = random_attack_tree(rng, opt);
    EXPECT_EQ(minsuc_semantics(t), oracle::minsuc(t));
  }
}

TEST(Stochasticity, PreservedByCompositionAndTensor) {
  std::mt19937_64 rng(43);
  auto run = [&](const auto& b) {
    const auto& sr = b.semiring();
    for (int k = 0; k < 500; ++k) {
      const std::size_t i = rng() % 3, j = rng() % 3, l = rng() % 3;
      auto f = random_stochastic(rng, b, i, j);
      auto g = random_stochastic(rng, b, j, l);
      ASSERT_TRUE(is_stochastic(f, sr));
      EXPECT_TRUE(is_stochastic(b.compose(f, g), sr));
      EXPECT_TRUE(is_stochastic(b.tensor(f, g), sr));
    }
  };
  for (const auto& sr : all_numeric()) run(BoolStochBackend<NumericSemiring>(sr));
  run(BoolStochBackend<AntichainSemiring>(AntichainSemiring{}));
  run(BoolStochBackend<MultisetSemiring>(MultisetSemiring{}));
}

TEST(Formula, EvaluationMatchesMatrixFormula) {
  std::mt19937_64 rng(47);
  RandomGraphOptions opt;
  for (int k = 0; k < 100; ++k) {
    auto g = random_component(rng, opt);
    const auto labels = bas_labels(g);
    for (const auto& sr : {mincost(), unrel(), maxprob()}) {
      auto w = random_weights(rng, sr, labels);
      expect_matrix_eq(evaluate(g, stoch_interpretation(sr, w)), oracle::matrix_by_formula(g, sr, w), sr);
    }
    AntichainSemiring ac;
    auto w = random_weights(rng, ac, labels);
    expect_matrix_eq(evaluate(g, stoch_interpretation(ac, w)), oracle::matrix_by_formula(g, ac, w), ac);
  }
}

TEST(Formula, PropositionalMatchesMinimalAttackSum) {
  std::mt19937_64 rng(53);
  RandomGraphOptions opt;
  for (const auto& name : {"mincost", "mintime-par", "mintime-seq", "maxprob"}) {
    auto sr = table1_semiring(name);
    for (int k = 0; k < 50; ++k) {
      auto t = random_attack_tree(rng, opt);
      Attribution<NumericSemiring> alpha;
      for (const auto& l : bas_labels(t)) alpha.emplace(l, random_value(rng, sr));
      auto got = metric_value(evaluate(t, propositional_interpretation(sr, alpha)));
      EXPECT_TRUE(sr.equal(got, oracle::prop_metric_by_formula(t, sr, alpha))) << name;
    }
  }
}
