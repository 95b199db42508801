#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace atmet;
using namespace atmet::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::SyntaxError;
}

TermGraph bas(const std::string& label, const Signature& sig) { return atomic(sig.lookup(label), sig); }

}  // namespace

TEST(Signature, AttackTreeSymbols) {
  auto sig = room_signature();
  EXPECT_EQ(sig.lookup("AND_3").arity, 3u);
  EXPECT_EQ(sig.lookup("OR_1").kind, SymbolKind::Or);
  EXPECT_EQ(sig.lookup("D").arity, 0u);
  EXPECT_FALSE(sig.find("AND_0"));
  EXPECT_FALSE(sig.find("OR_01"));
  EXPECT_FALSE(sig.find("X"));
  EXPECT_EQ(kind_of([] { Signature::attack_tree({"AND_2"}); }), ErrorKind::UnknownSymbol);
}

TEST(MakeTermGraph, OutputsMayRepeat) {
  auto sig = room_signature();
  NodeId n1{1}, n2{2}, n3{3};
  auto g = make_term_graph({n1, n2, n3}, {n1}, {n3, n2, n3}, {{n2, "F"}, {n3, "AND_2"}}, {{n2, {}}, {n3, {n1, n2}}},
                           sig);
  EXPECT_EQ(g.arity(), (Arity{1, 3}));
  EXPECT_EQ(g.node_count(), 3u);
}

TEST(MakeTermGraph, RejectsInvalidGraphs) {
  auto sig = room_signature();
  NodeId n1{1}, n2{2}, n3{3};
  EXPECT_EQ(kind_of([&] { make_term_graph({n1}, {n1, n1}, {}, {}, {}, sig); }), ErrorKind::DuplicateInput);
  EXPECT_EQ(kind_of([&] { make_term_graph({n3}, {}, {n3}, {{n3, "AND_1"}}, {{n3, {n3}}}, sig); }),
            ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1, n3}, {n1}, {n3}, {{n3, "AND_2"}}, {{n3, {n1}}}, sig); }),
            ErrorKind::ArityMismatch);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1}, {}, {n2}, {{n1, "D"}}, {}, sig); }), ErrorKind::DanglingReference);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1, n3}, {n1}, {n3}, {{n1, "D"}, {n3, "OR_1"}}, {{n3, {n1}}}, sig); }),
            ErrorKind::LabelOnInput);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1}, {}, {n1}, {}, {}, sig); }), ErrorKind::MissingLabel);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1}, {}, {n1}, {{n1, "Q"}}, {}, sig); }), ErrorKind::UnknownSymbol);
  EXPECT_EQ(kind_of([&] { make_term_graph({n1, n1}, {}, {}, {}, {}, sig); }), ErrorKind::DuplicateNodeDecl);
}

TEST(MakeTermGraph, LongerCycle) {
  auto sig = room_signature();
  NodeId a{0}, b{1}, c{2};
  EXPECT_EQ(kind_of([&] {
              make_term_graph({a, b, c}, {}, {a}, {{a, "OR_1"}, {b, "OR_1"}, {c, "OR_1"}},
                              {{a, {b}}, {b, {c}}, {c, {a}}}, sig);
            }),
            ErrorKind::CycleDetected);
}

TEST(Atomic, Shapes) {
  auto sig = room_signature();
  auto cp = atomic(Atom::copy(), sig);
  EXPECT_EQ(cp.arity(), (Arity{1, 2}));
  EXPECT_EQ(cp.outputs()[0], cp.outputs()[1]);
  auto a2 = atomic(sig.lookup("AND_2"), sig);
  EXPECT_EQ(a2.arity(), (Arity{2, 1}));
  EXPECT_EQ(a2.node_count(), 3u);
  auto id0 = atomic(Atom::id0(), sig);
  EXPECT_EQ(id0.arity(), (Arity{0, 0}));
  EXPECT_EQ(id0.node_count(), 0u);
  auto sw = atomic(Atom::swap(), sig);
  EXPECT_EQ(sw.outputs()[0], sw.inputs()[1]);
  EXPECT_EQ(sw.outputs()[1], sw.inputs()[0]);
  EXPECT_EQ(kind_of([&] { atomic(Symbol::label("Q"), sig); }), ErrorKind::UnknownSymbol);
}

TEST(Identity, SmallCases) {
  auto sig = room_signature();
  EXPECT_TRUE(iso_equal(identity(0, sig), atomic(Atom::id0(), sig)));
  EXPECT_TRUE(iso_equal(swap_block(1, 1, sig), atomic(Atom::swap(), sig)));
  EXPECT_TRUE(iso_equal(par_compose(atomic(Atom::id1(), sig), atomic(Atom::id1(), sig)), identity(2, sig)));
}

TEST(SeqCompose, BuildsRoom) {
  auto sig = room_signature();
  auto leaves = par_compose(bas("D", sig), par_compose(bas("F", sig), bas("S", sig)));
  EXPECT_EQ(leaves.arity(), (Arity{0, 3}));
  auto fan = par_compose(atomic(Atom::id1(), sig), par_compose(atomic(Atom::copy(), sig), atomic(Atom::id1(), sig)));
  auto ors = par_compose(atomic(sig.lookup("OR_2"), sig), atomic(sig.lookup("OR_2"), sig));
  auto top = seq_compose(seq_compose(fan, ors), atomic(sig.lookup("AND_2"), sig));
  EXPECT_EQ(top.arity(), (Arity{3, 1}));
  EXPECT_TRUE(iso_equal(seq_compose(leaves, top), room()));
}

TEST(SeqCompose, IdentityIsUnit) {
  auto t = room_sub();
  EXPECT_TRUE(iso_equal(seq_compose(t, identity(2)), t));
  EXPECT_TRUE(iso_equal(seq_compose(identity(0), t), t));
}

TEST(SeqCompose, SwapAfterCopyIsCopy) {
  auto sig = room_signature();
  auto g = seq_compose(atomic(Atom::copy(), sig), atomic(Atom::swap(), sig));
  EXPECT_EQ(g.arity(), (Arity{1, 2}));
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(iso_equal(g, atomic(Atom::copy(), sig)));
}

TEST(SeqCompose, ArityMismatch) {
  auto sig = room_signature();
  EXPECT_EQ(kind_of([&] { seq_compose(atomic(Atom::copy(), sig), atomic(Atom::id1(), sig)); }),
            ErrorKind::ArityMismatch);
}

TEST(ParCompose, CopyThenDelete) {
  auto sig = room_signature();
  auto g = par_compose(atomic(Atom::copy(), sig), atomic(Atom::del(), sig));
  EXPECT_EQ(g.arity(), (Arity{2, 2}));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.outputs()[0], g.inputs()[0]);
  EXPECT_EQ(g.outputs()[1], g.inputs()[0]);
}

TEST(SwapBlock, PermutesOutputs) {
  auto sig = Signature::attack_tree({"a", "b", "c"});
  auto abc = par_compose(bas("a", sig), par_compose(bas("b", sig), bas("c", sig)));
  auto g = seq_compose(abc, swap_block(2, 1, sig));
  std::vector<std::string> names;
  for (NodeId o : g.outputs()) names.push_back(g.symbol(o)->name);
  EXPECT_EQ(names, (std::vector<std::string>{"c", "a", "b"}));
}

TEST(IsoEqual, IgnoresNodeIds) {
  auto g = room();
  NodeId D{100}, F{101}, S{102}, t{103}, d{104}, r{105};
  auto h = make_term_graph({D, F, S, t, d, r}, {}, {r},
                           {{D, "D"}, {F, "F"}, {S, "S"}, {t, "OR_2"}, {d, "OR_2"}, {r, "AND_2"}},
                           {{t, {D, F}}, {d, {F, S}}, {r, {t, d}}}, room_signature());
  EXPECT_TRUE(iso_equal(g, h));
}

TEST(IsoEqual, SharingMatters) { EXPECT_FALSE(iso_equal(room(), room_duplicated())); }

TEST(IsoEqual, ChildOrderMatters) {
  auto sig = room_signature();
  NodeId a{0}, b{1}, r{2};
  auto g = make_term_graph({a, b, r}, {}, {r}, {{a, "D"}, {b, "F"}, {r, "AND_2"}}, {{r, {a, b}}}, sig);
  auto h = make_term_graph({a, b, r}, {}, {r}, {{a, "D"}, {b, "F"}, {r, "AND_2"}}, {{r, {b, a}}}, sig);
  EXPECT_FALSE(iso_equal(g, h));
}

TEST(IsoEqual, GarbageNodes) {
  auto sig = room_signature();
  auto g = make_term_graph({NodeId{3}}, {}, {}, {{NodeId{3}, "D"}}, {}, sig);
  auto h = make_term_graph({NodeId{7}}, {}, {}, {{NodeId{7}, "D"}}, {}, sig);
  EXPECT_TRUE(iso_equal(g, h));
  EXPECT_FALSE(iso_equal(g, atomic(Atom::id0(), sig)));
  auto two = make_term_graph({NodeId{1}, NodeId{2}}, {}, {}, {{NodeId{1}, "D"}, {NodeId{2}, "D"}}, {}, sig);
  EXPECT_FALSE(iso_equal(g, two));
}

TEST(IsoEqual, OutputOrderMatters) {
  auto sig = room_signature();
  auto g = par_compose(bas("D", sig), bas("F", sig));
  auto h = par_compose(bas("F", sig), bas("D", sig));
  EXPECT_FALSE(iso_equal(g, h));
  EXPECT_TRUE(iso_equal(seq_compose(h, atomic(Atom::swap(), sig)), g));
}

TEST(TopologicalOrder, ChildrenFirst) {
  auto g = room();
  auto order = topological_order(g);
  ASSERT_EQ(order.size(), g.node_count());
  std::map<NodeId, std::size_t> at;
  for (std::size_t k = 0; k < order.size(); ++k) at[order[k]] = k;
  for (NodeId n : g.nodes()) {
    if (g.is_input(n)) continue;
    for (NodeId c : g.children(n)) EXPECT_LT(at[c], at[n]);
  }
}

// Category laws of term graphs up to isomorphism, on random graphs.
class TermGraphLaws : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2024};
  RandomGraphOptions opt = small_graphs();
  TermGraph draw(std::size_t i, std::size_t j) { return random_component(rng, opt, i, j); }
};

TEST_F(TermGraphLaws, SequentialAssociativity) {
  for (int k = 0; k < 100; ++k) {
    auto f = draw(rng() % 3, 2), g = draw(2, 2), h = draw(2, rng() % 3);
    EXPECT_TRUE(iso_equal(seq_compose(seq_compose(f, g), h), seq_compose(f, seq_compose(g, h))));
  }
}

TEST_F(TermGraphLaws, ParallelAssociativityAndUnit) {
  for (int k = 0; k < 100; ++k) {
    auto f = draw(rng() % 3, rng() % 3), g = draw(rng() % 3, rng() % 3), h = draw(rng() % 3, rng() % 3);
    EXPECT_TRUE(iso_equal(par_compose(par_compose(f, g), h), par_compose(f, par_compose(g, h))));
    EXPECT_TRUE(iso_equal(par_compose(f, identity(0)), f));
    EXPECT_TRUE(iso_equal(par_compose(identity(0), f), f));
  }
}

TEST_F(TermGraphLaws, Interchange) {
  for (int k = 0; k < 100; ++k) {
    const std::size_t a = rng() % 3, b = rng() % 3, c = rng() % 3, d = rng() % 3;
    auto f1 = draw(a, b), g1 = draw(b, rng() % 3), f2 = draw(c, d), g2 = draw(d, rng() % 3);
    EXPECT_TRUE(iso_equal(par_compose(seq_compose(f1, g1), seq_compose(f2, g2)),
                          seq_compose(par_compose(f1, f2), par_compose(g1, g2))));
  }
}

TEST_F(TermGraphLaws, SwapNaturality) {
  for (int k = 0; k < 100; ++k) {
    const std::size_t i = rng() % 3, j = rng() % 3, p = rng() % 3, q = rng() % 3;
    auto f = draw(i, j), g = draw(p, q);
    EXPECT_TRUE(iso_equal(seq_compose(par_compose(f, g), swap_block(j, q)),
                          seq_compose(swap_block(i, p), par_compose(g, f))));
  }
}

TEST(TermGraphComonoid, Laws) {
  auto sig = room_signature();
  auto cp = atomic(Atom::copy(), sig);
  auto id1 = atomic(Atom::id1(), sig);
  auto del = atomic(Atom::del(), sig);
  EXPECT_TRUE(iso_equal(seq_compose(cp, par_compose(cp, id1)), seq_compose(cp, par_compose(id1, cp))));
  EXPECT_TRUE(iso_equal(seq_compose(cp, par_compose(del, id1)), id1));
  EXPECT_TRUE(iso_equal(seq_compose(cp, par_compose(id1, del)), id1));
  EXPECT_TRUE(iso_equal(seq_compose(cp, atomic(Atom::swap(), sig)), cp));
}

TEST(RandomGraphs, AlwaysValid) {
  std::mt19937_64 rng(5);
  auto opt = small_graphs();
  for (int k = 0; k < 300; ++k) {
    auto g = random_component(rng, opt);
    EXPECT_LE(g.node_count(), 10u);
    EXPECT_LE(g.inputs().size(), 3u);
    EXPECT_LE(g.outputs().size(), 3u);
  }
}
