#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "atmet/frontend/cli.hpp"

using namespace atmet::frontend;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string sample(const std::string& name) { return std::string(ATMET_SAMPLES_DIR) + "/" + name; }

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "atmet");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Validate) {
  auto r = run({"validate", sample("room.at")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "valid: component room, arity 0->1, 6 nodes, 3 basic attack steps\n");
}

TEST(Cli, Decompose) {
  auto r = run({"decompose", sample("room.at")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "L1: D ⊗ F ⊗ S ; L2: id1 ⊗ copy ⊗ id1 ; L3: OR_2 ⊗ OR_2 ; L4: AND_2\n");
  auto j = run({"decompose", sample("room.at"), "--format", "json"});
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc.at("layers").size(), 4u);
  EXPECT_EQ(doc.at("width"), 4);
}

TEST(Cli, Dot) {
  auto r = run({"dot", sample("room.at")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

TEST(Cli, EvalRoom) {
  auto attr = sample("room.attr");
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "bottom-up", "--attr", attr}).out, "110\n");
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "propositional", "--attr", attr}).out, "100\n");
  EXPECT_EQ(run({"eval", sample("room_dup.at"), "--semantics", "propositional", "--attr", attr}).out, "110\n");
  EXPECT_EQ(run({"eval", sample("room_sub.at"), "--semantics", "propositional", "--attr", attr}).out,
            "(0, 80, 30, 100)\n");
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "minsuc"}).out, "{{D, S}, {F}}\n");
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "boolean", "--assign", sample("room.assign")}).out, "1\n");
}

TEST(Cli, JsonOutput) {
  auto r = run({"eval", sample("room.at"), "--semantics", "propositional", "--attr", sample("room.attr"), "--format",
                "json"});
  ASSERT_EQ(r.code, kOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("semantics"), "propositional");
  EXPECT_EQ(j.at("arity"), nlohmann::json::array({0, 1}));
  EXPECT_TRUE(j.contains("value"));
}

TEST(Cli, CompareAllSemantics) {
  auto room_file = sample("room.at");
  for (std::vector<std::string> extra : {std::vector<std::string>{"--semantics", "bottom-up", "--attr", sample("room.attr")},
                                         {"--semantics", "propositional", "--attr", sample("room.attr")},
                                         {"--semantics", "stochastic", "--semiring", "maxprob", "--attr", sample("weights.attr")},
                                         {"--semantics", "unreliability", "--attr", sample("probs.attr")},
                                         {"--semantics", "boolean", "--assign", sample("room.assign")},
                                         {"--semantics", "minsuc"},
                                         {"--semantics", "multiset"}}) {
    std::vector<std::string> args{"compare", room_file};
    args.insert(args.end(), extra.begin(), extra.end());
    auto r = run(args);
    EXPECT_EQ(r.code, kOk) << extra[1] << ": " << r.out << r.err;
    EXPECT_NE(r.out.find("EQUAL"), std::string::npos) << extra[1];
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"validate", std::string(ATMET_SAMPLES_DIR) + "/../tests/data/unknown_ref.at"}).code, kParseError);
  EXPECT_EQ(run({"validate", sample("missing.at")}).code, kParseError);
  EXPECT_EQ(run({}).code, kParseError);
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "propositional", "--attr", sample("room.attr"),
                 "--max-width", "2"}).code,
            kCapExceeded);
  EXPECT_EQ(run({"eval", sample("room.at"), "--semantics", "bottom-up", "--semiring", "nope", "--attr",
                 sample("room.attr")}).code,
            kSemanticError);
  EXPECT_EQ(run({"eval", sample("copy.at"), "--semantics", "bottom-up", "--attr", sample("room.attr")}).code,
            kSemanticError);
}

TEST(Cli, DiagnosticFormat) {
  auto path = std::string(ATMET_SAMPLES_DIR) + "/../tests/data/unknown_ref.at";
  auto r = run({"validate", path});
  EXPECT_EQ(r.err.rfind(path + ":2:", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("UnknownNodeRef"), std::string::npos);
}

TEST(Cli, NonAbsorbingWarning) {
  auto r = run({"eval", sample("room.at"), "--semantics", "propositional", "--semiring", "maxchallenge", "--attr",
                sample("room.attr")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, Deterministic) {
  auto args = std::vector<std::string>{"eval", sample("room.at"), "--semantics", "multiset", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
}
