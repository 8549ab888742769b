// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "gen.hpp"
#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/reflection.hpp"
#include "rasm/text.hpp"
#include "rasm/tree_diff.hpp"

namespace rasm {
namespace {

template <typename F>
ErrorCode codeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

Signature sigOf(std::vector<FunctionSymbol> syms) {
  Signature s(std::move(syms));
  s.add({std::string(kPgm), 0});
  return s;
}

State programState(const Signature& sig, const Rule& r) {
  State s(sig);
  s.set(Location{std::string(kPgm), {}}, Value::tree(dropProgram(sig, r)));
  return s;
}

TEST(Drop, AssignmentShape) {
  Tree t = dropRule(parseRule("f := 7"));
  EXPECT_EQ(printTree(t), "update⟨func=⟨'f⟩ term=⟨()⟩ term=⟨TERM[7]⟩⟩");
}

TEST(Drop, ParAndImportShapes) {
  Rule r1 = parseRule("f := 1");
  Rule r2 = parseRule("g := 2");
  Tree par = dropRule(Rule::par({r1, r2}));
  EXPECT_EQ(par.label(par.root()).name(), "par");
  ASSERT_EQ(par.children(par.root()).size(), 2u);
  Tree first = subtree(par, NodeId{par.children(par.root())[0]});
  EXPECT_TRUE(treesEqual(first, Tree::node(Label("rule"), std::vector<Tree>{dropRule(r1)})));

  Tree imp = dropRule(parseRule("IMPORT x DO f := x"));
  EXPECT_EQ(printTree(imp),
            "import⟨term=⟨TERM[?x]⟩ rule⟨update⟨func=⟨'f⟩ term=⟨()⟩ term=⟨TERM[?x]⟩⟩⟩⟩");
}

TEST(Raise, InvertsDropOnGeneratedRules) {
  testing::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    Rule r = testing::randomRule(g);
    EXPECT_EQ(raiseRule(dropRule(r)), r) << printRule(r);
  }
}

TEST(Raise, InvertsDropOnSignatures) {
  Signature sig = sigOf({{"f", 2}, {"g", 0}});
  EXPECT_EQ(raiseSignature(dropSignature(sig)), sig);
  Signature one = raiseSignature(parseTree("signature⟨func⟨name=⟨'pgm⟩ arity=⟨0⟩⟩⟩"));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.find("pgm")->arity, 0u);
}

TEST(Raise, MalformedEncodings) {
  EXPECT_EQ(codeOf([] { raiseRule(parseTree("bool")); }), ErrorCode::MalformedEncoding);
  EXPECT_EQ(codeOf([] { raiseRule(parseTree("update⟨func=⟨'f⟩ term=⟨()⟩⟩")); }),
            ErrorCode::MalformedEncoding);
  EXPECT_EQ(codeOf([] { raiseTerm(Value::nat(3)); }), ErrorCode::MalformedEncoding);
  try {
    raiseRule(parseTree("par⟨rule⟨update⟨func=⟨'f⟩ term=⟨()⟩ term=⟨1⟩⟩⟩⟩"));
    FAIL() << "expected malformed-encoding";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("root.0.0.2"), std::string::npos) << e.what();
  }
}

TEST(Extract, ChildSelection) {
  Signature sig = sigOf({{"f", 0}});
  Rule r = parseRule("f := 1");
  Tree p = dropProgram(sig, r);
  EXPECT_TRUE(treesEqual(extractSignatureSubtree(p), dropSignature(sig)));
  EXPECT_TRUE(treesEqual(extractRuleSubtree(p),
                         Tree::node(Label("rule"), std::vector<Tree>{dropRule(r)})));
  Tree twoRules = parseTree("pgm⟨rule⟨par⟩ rule⟨par⟩⟩");
  EXPECT_EQ(codeOf([&] { extractRuleSubtree(twoRules); }), ErrorCode::MalformedProgramTree);
  EXPECT_EQ(codeOf([&] { raiseProgram(twoRules); }), ErrorCode::MalformedProgramTree);
}

TEST(Beta, AssignmentIsOneGuardlessComprehension) {
  std::vector<Term> b = betaOfRule(parseRule("f := 3"));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], Term::comprehension(Term::literal(Value::nat(3)), {},
                                      Term::literal(Value::boolean(true))));
  EXPECT_EQ(beta(dropRule(parseRule("f := 3"))), b);
}

TEST(Beta, ImportAndParClauses) {
  Rule r1 = parseRule("f(1) := 2");
  Rule r2 = parseRule("IF g THEN h := 1 ELSE h := 2 ENDIF");
  EXPECT_EQ(betaOfRule(Rule::import("x", r1)), betaOfRule(r1));
  std::vector<Term> expected = betaOfRule(r1);
  for (const Term& t : betaOfRule(r2)) expected.push_back(t);
  EXPECT_EQ(betaOfRule(Rule::par({r1, r2})), expected);
  // if: the guard comprehension plus one element per branch element.
  EXPECT_EQ(betaOfRule(r2).size(), 3u);
}

TEST(Beta, ImportFreeElementsAreClosedAfterClosing) {
  testing::Gen g(32);
  State s = testing::randomSmallState(g);
  Signature sig = testing::generatorSignature();
  testing::RuleShape shape;
  shape.imports = false;
  for (int i = 0; i < 200; ++i) {
    Rule r = testing::randomRule(g, shape);
    for (const Term& t : betaOfRule(r)) {
      Term closed = closeBetaTerm(t);
      EXPECT_TRUE(freeVariables(closed).empty()) << printTerm(closed);
      try {
        Value v = Evaluator(s, sig).term({}, closed);
        EXPECT_TRUE(v.isMultiset());
      } catch (const Error& e) {
        // Errors come from the encoded terms themselves, never from free variables.
        EXPECT_NE(e.code(), ErrorCode::UnboundVariable) << printTerm(closed);
      }
    }
  }
}

TEST(Step, IncrementProgram) {
  Signature sig = sigOf({{"f", 0}});
  State s = programState(sig, parseRule("f := f + 1"));
  s.set(Location{"f", {}}, Value::nat(0));
  StepReport rep = step(s);
  EXPECT_TRUE(rep.consistent);
  EXPECT_EQ(rep.next.get("f"), Value::nat(1));
  EXPECT_EQ(rep.next.get(std::string(kPgm)), s.get(std::string(kPgm)));
}

TEST(Step, EmptyParLeavesStateUnchanged) {
  State s = programState(sigOf({{"f", 0}}), Rule::skip());
  EXPECT_EQ(step(s).next, s);
}

TEST(Step, SelfRewritingProgram) {
  Signature sig = sigOf({{"f", 0}});
  const Value second = Value::tree(dropProgram(sig, parseRule("f := 2")));
  Rule first = Rule::par({parseRule("f := 1"),
                          Rule::assign(std::string(kPgm), {}, Term::literal(second))});
  State s0 = programState(sig, first);
  State s1 = step(s0).next;
  EXPECT_EQ(s1.get("f"), Value::nat(1));
  EXPECT_EQ(s1.get(std::string(kPgm)), second);
  State s2 = step(s1).next;
  EXPECT_EQ(s2.get("f"), Value::nat(2));
  EXPECT_EQ(raiseProgram(s2.get(std::string(kPgm)).asTree()).rule, parseRule("f := 2"));
}

TEST(Step, InconsistentStepStutters) {
  State s = programState(sigOf({{"f", 0}}), parseRule("PAR f := 1 f := 2 ENDPAR"));
  StepReport rep = step(s);
  EXPECT_FALSE(rep.consistent);
  EXPECT_EQ(rep.next, s);
}

TEST(Step, MalformedAndShrinkingPrograms) {
  Signature sig = sigOf({{"f", 0}});
  State bad(sig);
  bad.set(Location{std::string(kPgm), {}}, Value::tree(parseTree("pgm⟨rule⟨par⟩⟩")));
  EXPECT_EQ(codeOf([&] { step(bad); }), ErrorCode::MalformedProgramTree);

  // The next program drops f.
  const Value smaller = Value::tree(dropProgram(sigOf({}), Rule::skip()));
  State s = programState(sig, Rule::assign(std::string(kPgm), {}, Term::literal(smaller)));
  EXPECT_EQ(codeOf([&] { step(s); }), ErrorCode::SignatureShrunk);

  // New symbols must come from the reserve.
  const Value grown = Value::tree(dropProgram(sigOf({{"f", 0}, {"g", 0}}), Rule::skip()));
  State t = programState(sig, Rule::assign(std::string(kPgm), {}, Term::literal(grown)));
  EXPECT_EQ(codeOf([&] { step(t); }), ErrorCode::MalformedProgramTree);
}

TEST(Step, StaticProgramMatchesDirectIteration) {
  testing::Gen g(33);
  Signature sig = testing::generatorSignature();
  sig.add({std::string(kPgm), 0});
  int completed = 0;
  for (int i = 0; i < 150; ++i) {
    Rule r = testing::randomRule(g);
    State s = testing::randomSmallState(g);
    s.setSignature(sig);
    s.set(Location{std::string(kPgm), {}}, Value::tree(dropProgram(sig, r)));
    State direct = s;
    try {
      for (int k = 0; k < 3; ++k) {
        s = step(s).next;
        ReserveCursor cursor = direct.reserve();
        UpdateSet u = collapse(direct, evalRule(direct, {}, r, &cursor));
        State next = applyUpdateSet(direct, u);
        if (u.consistent) next.reserve() = cursor;
        direct = next;
        ASSERT_EQ(s, direct) << printRule(r);
      }
      ++completed;
    } catch (const Error&) {
      // Both sides evaluate the same rule; errors are covered elsewhere.
    }
  }
  EXPECT_GT(completed, 50);
}

TEST(TreeDiff, IdentityIsTheRootReference) {
  Tree t = dropProgram(sigOf({{"f", 0}}), parseRule("f := 1"));
  AlgebraTerm theta = treeDiffTheta(t, t);
  EXPECT_EQ(theta.kind(), AlgebraTerm::Kind::Ref);
  EXPECT_TRUE(theta.path().empty());
  EXPECT_TRUE(treesEqual(evaluateAlgebraTerm(theta, t), t));
  EXPECT_TRUE(treeDiffUpdates(t, t).empty());
}

TEST(TreeDiff, SignatureGrowthIsOneRightExtension) {
  Tree t = dropProgram(sigOf({{"f", 0}}), parseRule("f := 1"));
  Tree func = parseTree("func⟨name=⟨'$g⟩ arity=⟨1⟩⟩");
  Tree sig2 = rightExtend(Hedge{func}, extractSignatureSubtree(t));
  Tree t2 = labelHedge(Label("pgm"), {sig2, extractRuleSubtree(t)});
  AlgebraTerm theta = treeDiffTheta(t, t2);
  EXPECT_EQ(printAlgebraTerm(theta),
            "label_hedge(pgm, right_extend(subtree@root.0, label_hedge(func, name=⟨'$g⟩, "
            "arity=⟨1⟩)), subtree@root.1)");
  EXPECT_TRUE(treesEqual(evaluateAlgebraTerm(theta, t), t2));
}

TEST(TreeDiff, OneChangedAssignment) {
  Signature sig = sigOf({{"f", 0}, {"g", 0}});
  Tree t = dropProgram(sig, parseRule("PAR f := 1 g := 2 ENDPAR"));
  Tree t2 = dropProgram(sig, parseRule("PAR f := 1 g := 3 ENDPAR"));
  UpdateMultiset um = treeDiffUpdates(t, t2);
  ASSERT_EQ(um.size(), 1u);
  State s(sig);
  s.set(Location{std::string(kPgm), {}}, Value::tree(t));
  UpdateSet u = collapse(s, um);
  ASSERT_TRUE(u.consistent);
  EXPECT_EQ(u.updates, (std::map<Location, Value>{{Location{std::string(kPgm), {}},
                                                    Value::tree(t2)}}));
  EXPECT_TRUE(treesEqual(evaluateAlgebraTerm(treeDiffTheta(t, t2), t), t2));
}

TEST(TreeDiff, ShrinkingSignatureIsRejected) {
  Tree t = dropProgram(sigOf({{"f", 0}}), Rule::skip());
  Tree t2 = dropProgram(sigOf({}), Rule::skip());
  EXPECT_EQ(codeOf([&] { treeDiffTheta(t, t2); }), ErrorCode::SignatureShrunk);
  EXPECT_EQ(codeOf([&] { treeDiffUpdates(t, t2); }), ErrorCode::SignatureShrunk);
}

TEST(TreeDiff, RandomEditPairs) {
  testing::Gen g(34);
  for (int i = 0; i < 150; ++i) {
    Tree t = testing::randomProgramTree(g);
    Tree t2 = testing::randomEdit(g, t);
    EXPECT_TRUE(treesEqual(evaluateAlgebraTerm(treeDiffTheta(t, t2), t), t2));
    State s(raiseProgram(t).signature);
    s.set(Location{std::string(kPgm), {}}, Value::tree(t));
    UpdateSet u = collapse(s, treeDiffUpdates(t, t2));
    ASSERT_TRUE(u.consistent);
    if (t == t2) {
      EXPECT_TRUE(u.updates.empty());
    } else {
      EXPECT_EQ(u.updates, (std::map<Location, Value>{{Location{std::string(kPgm), {}},
                                                        Value::tree(t2)}}));
    }
  }
}

}  // namespace
}  // namespace rasm
