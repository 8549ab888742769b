// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracle.hpp"
#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/state.hpp"
#include "rasm/text.hpp"
#include "rasm/updates.hpp"

namespace rasm {
namespace {

Value N(std::uint64_t n) { return Value::nat(n); }
Value A(const char* a) { return Value::atom(a); }
Location L(const char* f, std::vector<Value> args = {}) { return Location{f, std::move(args)}; }

State stateWith(std::vector<FunctionSymbol> sig) { return State(Signature(std::move(sig))); }

template <typename F>
ErrorCode codeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

UpdateSet run(const State& s, const char* rule) { return collapse(s, evalRule(s, {}, parseRule(rule))); }

TEST(Signature, RejectsConflictingArity) {
  Signature sig({{"f", 1}});
  EXPECT_NO_THROW(sig.add({"f", 1}));
  EXPECT_EQ(codeOf([&] { sig.add({"f", 2}); }), ErrorCode::ArityMismatch);
  EXPECT_TRUE(Signature({{"f", 1}}).isSubsetOf(Signature({{"f", 1}, {"g", 0}})));
  EXPECT_FALSE(Signature({{"f", 1}}).isSubsetOf(Signature({{"f", 2}})));
}

TEST(State, StoringUndefRemovesTheBinding) {
  State s = stateWith({{"f", 1}});
  s.set(L("f", {N(1)}), N(3));
  EXPECT_EQ(s.get(L("f", {N(1)})), N(3));
  s.set(L("f", {N(1)}), Value::undef());
  EXPECT_TRUE(s.bindings().empty());
  EXPECT_EQ(codeOf([&] { s.set(L("f"), N(1)); }), ErrorCode::ArityMismatch);
}

TEST(State, ActiveDomainCollectsNestedValues) {
  State s = stateWith({{"f", 1}, {"g", 0}});
  s.set(L("f", {N(1)}), Value::tuple({A("a"), Value::multiset({N(7)})}));
  s.addUniverseAtom(A("u"));
  auto dom = activeDomain(s);
  for (const Value& v : {N(1), A("a"), N(7), A("u")}) {
    EXPECT_NE(std::find(dom.begin(), dom.end(), v), dom.end()) << printValue(v);
  }
  EXPECT_TRUE(std::is_sorted(dom.begin(), dom.end()));
  EXPECT_EQ(std::find(dom.begin(), dom.end(), Value::undef()), dom.end());
}

TEST(EvalTerm, LiteralsAndLookups) {
  State s = stateWith({{"f", 0}, {"g", 1}, {"h", 1}});
  EXPECT_EQ(evalTerm(s, {}, parseTerm("7")), N(7));
  s.set(L("f"), N(3));
  EXPECT_EQ(evalTerm(s, {}, parseTerm("f")), N(3));
  // g(1) is undef, so the strict application h(g(1)) is undef as well.
  s.set(L("g", {N(2)}), N(5));
  s.set(L("h", {N(5)}), N(9));
  EXPECT_EQ(evalTerm(s, {}, parseTerm("h(g(2))")), N(9));
  EXPECT_TRUE(evalTerm(s, {}, parseTerm("h(g(1))")).isUndef());
}

TEST(EvalTerm, Errors) {
  State s = stateWith({{"f", 1}});
  EXPECT_EQ(codeOf([&] { evalTerm(s, {}, parseTerm("zz")); }), ErrorCode::UnknownSymbol);
  EXPECT_EQ(codeOf([&] { evalTerm(s, {}, parseTerm("f(1, 2)")); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(codeOf([&] { evalTerm(s, {}, Term::var("x")); }), ErrorCode::UnboundVariable);
}

TEST(EvalTerm, BackgroundOperators) {
  State s;
  auto ev = [&](const char* t) { return printValue(evalTerm(s, {}, parseTerm(t))); };
  EXPECT_EQ(ev("2 + 3 * 4"), "14");
  EXPECT_EQ(ev("2 - 5"), "0");
  EXPECT_EQ(ev("1 < 2 and not false"), "true");
  EXPECT_EQ(ev("undef or true"), "true");
  EXPECT_EQ(ev("undef and true"), "undef");
  EXPECT_EQ(ev("proj((4, 5), 2)"), "5");
  EXPECT_EQ(ev("size({| 1, 1, 2 |})"), "3");
  EXPECT_EQ(ev("'a + 1"), "undef");
  EXPECT_EQ(ev("label_hedge('a, (leaf('b), leaf('c, 3)))"), "TREE[a⟨b c=⟨3⟩⟩]");
  EXPECT_EQ(ev("subtree(TREE[a⟨b⟨x⟩ c⟩], (0,))"), "TREE[b⟨x⟩]");
}

TEST(Comprehension, BruteForceEnumeration) {
  State s = stateWith({{"f", 1}});
  s.set(L("f", {N(1)}), N(10));
  s.set(L("f", {N(2)}), N(10));
  // Active domain {1, 2, 10}; the guard excludes 10.
  Value all = evalTerm(s, {}, parseTerm("{| f(x) | x : x < 3 |}"));
  EXPECT_EQ(all, Value::multiset({N(10), N(10)}));
  EXPECT_EQ(evalTerm(s, {}, parseTerm("{| x | x : false |}")), Value::multiset({}));

  State d = stateWith({{"u", 1}});
  for (std::uint64_t i = 1; i <= 3; ++i) d.set(L("u", {N(i)}), Value::boolean(true));
  EXPECT_EQ(evalTerm(d, {}, parseTerm("{| x | x : x = 1 |}")), Value::multiset({N(1)}));
}

TEST(Comprehension, GuardMustBeBoolean) {
  State s = stateWith({{"u", 0}});
  s.set(L("u"), N(1));
  EXPECT_EQ(codeOf([&] { evalTerm(s, {}, parseTerm("{| x | x : 5 |}")); }),
            ErrorCode::NonBooleanGuard);
}

TEST(EvalRule, AssignmentYieldsOneUpdate) {
  State s = stateWith({{"f", 0}});
  UpdateMultiset um = evalRule(s, {}, parseRule("f := 1"));
  ASSERT_EQ(um.size(), 1u);
  EXPECT_EQ(std::get<Update>(um.items()[0]), (Update{L("f"), N(1)}));
}

TEST(EvalRule, IfSelectsBranchAndRejectsUndef) {
  State s = stateWith({{"f", 0}, {"c", 0}});
  EXPECT_EQ(run(s, "IF false THEN f := 1 ELSE f := 2 ENDIF").updates.at(L("f")), N(2));
  EXPECT_EQ(codeOf([&] { run(s, "IF c THEN f := 1 ELSE f := 2 ENDIF"); }),
            ErrorCode::ConditionUndef);
  s.set(L("c"), N(1));
  EXPECT_EQ(codeOf([&] { run(s, "IF c THEN f := 1 ENDIF"); }), ErrorCode::NonBooleanGuard);
}

TEST(EvalRule, ForallOverActiveDomain) {
  State s = stateWith({{"f", 1}, {"u", 1}});
  for (std::uint64_t i = 1; i <= 3; ++i) s.set(L("u", {N(i)}), Value::boolean(true));
  UpdateSet u = run(s, "FORALL x WITH x > 1 DO f(x) := 0 ENDDO");
  ASSERT_TRUE(u.consistent);
  EXPECT_EQ(u.updates.size(), 2u);
  EXPECT_EQ(u.updates.at(L("f", {N(2)})), N(0));
  EXPECT_EQ(u.updates.at(L("f", {N(3)})), N(0));
}

TEST(EvalRule, LetSubstitutesAndImportDrawsFreshAtoms) {
  State s = stateWith({{"f", 1}, {"g", 0}});
  EXPECT_EQ(run(s, "LET x = 2 + 3 IN g := x * x").updates.at(L("g")), N(25));
  ReserveCursor cursor;
  UpdateMultiset um = evalRule(s, {}, parseRule("IMPORT x DO g := x"), &cursor);
  EXPECT_EQ(std::get<Update>(um.items()[0]).value, A("$r0"));
  EXPECT_EQ(cursor.next, 1u);
  EXPECT_EQ(codeOf([&] { run(s, "IMPORT x DO f(x) := 1"); }), ErrorCode::ImportBoundLocation);
}

TEST(EvalRule, FreshAtomsSkipAtomsInUse) {
  State s = stateWith({{"g", 0}});
  s.set(L("g"), A("$r0"));
  UpdateMultiset um = evalRule(s, {}, parseRule("PAR IMPORT x DO g := x IMPORT y DO g := y ENDPAR"));
  EXPECT_EQ(std::get<Update>(um.items()[0]).value, A("$r1"));
  EXPECT_EQ(std::get<Update>(um.items()[1]).value, A("$r2"));
}

TEST(Collapse, ClashingValuesAreInconsistent) {
  State s = stateWith({{"f", 0}});
  UpdateMultiset um;
  um.add(Update{L("f"), N(1)});
  um.add(Update{L("f"), N(2)});
  UpdateSet u = collapse(s, um);
  EXPECT_FALSE(u.consistent);
  EXPECT_EQ(u.clashes, std::vector<Location>{L("f")});
}

TEST(Collapse, DuplicatesCollapse) {
  State s = stateWith({{"f", 0}});
  UpdateMultiset um;
  um.add(Update{L("f"), N(1)});
  um.add(Update{L("f"), N(1)});
  UpdateSet u = collapse(s, um);
  EXPECT_TRUE(u.consistent);
  EXPECT_EQ(u.updates, (std::map<Location, Value>{{L("f"), N(1)}}));
}

TEST(Collapse, SharedUnionInBothOrders) {
  State s = stateWith({{"f", 0}});
  s.set(L("f"), Value::multiset({}));
  SharedUpdate a{L("f"), "union", {Value::multiset({A("a")})}};
  SharedUpdate b{L("f"), "union", {Value::multiset({A("b")})}};
  UpdateMultiset ab;
  ab.add(a);
  ab.add(b);
  UpdateMultiset ba;
  ba.add(b);
  ba.add(a);
  const Value expected = Value::multiset({A("a"), A("b")});
  EXPECT_EQ(collapse(s, ab).updates.at(L("f")), expected);
  EXPECT_EQ(collapse(s, ba).updates.at(L("f")), expected);
}

TEST(Collapse, MixedGroupsAndNonCommutingGroupsAreInconsistent) {
  State s = stateWith({{"f", 0}});
  s.set(L("f"), N(1));
  UpdateMultiset mixed;
  mixed.add(Update{L("f"), N(3)});
  mixed.add(SharedUpdate{L("f"), "add", {N(1)}});
  EXPECT_FALSE(collapse(s, mixed).consistent);

  UpdateMultiset order;
  order.add(SharedUpdate{L("f"), "add", {N(5)}});
  order.add(SharedUpdate{L("f"), "max", {N(4)}});
  // add-then-max gives 6, max-then-add gives 9.
  EXPECT_FALSE(collapse(s, order).consistent);

  UpdateMultiset unknown;
  unknown.add(SharedUpdate{L("f"), "nope", {N(1)}});
  EXPECT_EQ(codeOf([&] { collapse(s, unknown); }), ErrorCode::UnknownOperator);
}

TEST(Collapse, PartialAssignmentRule) {
  State s = stateWith({{"t", 0}, {"w", 1}});
  for (std::uint64_t i = 1; i <= 4; ++i) s.set(L("w", {N(i)}), N(i * 10));
  UpdateSet u = run(s, "FORALL x WITH x < 5 DO t <<= add(w(x)) ENDDO");
  ASSERT_TRUE(u.consistent);
  EXPECT_EQ(u.updates.at(L("t")), N(100));
}

TEST(Collapse, AppendIsOrderSensitive) {
  State s = stateWith({{"q", 0}});
  UpdateMultiset one;
  one.add(SharedUpdate{L("q"), "append", {N(1)}});
  EXPECT_EQ(collapse(s, one).updates.at(L("q")), Value::tuple({N(1)}));
  UpdateMultiset two = one;
  two.add(SharedUpdate{L("q"), "append", {N(2)}});
  EXPECT_FALSE(collapse(s, two).consistent);
}

TEST(Collapse, TreeEditsOnDisjointPathsCommute) {
  State s = stateWith({{"p", 0}});
  s.set(L("p"), Value::tree(parseTree("a⟨b c⟩")));
  UpdateMultiset um;
  um.add(SharedUpdate{L("p"), "tree_replace",
                      {Value::tuple({N(0)}), Value::tree(parseTree("x"))}});
  um.add(SharedUpdate{L("p"), "tree_append",
                      {Value::tuple({N(1)}), Value::tuple({Value::tree(parseTree("y"))})}});
  UpdateSet u = collapse(s, um);
  ASSERT_TRUE(u.consistent);
  EXPECT_EQ(printValue(u.updates.at(L("p"))), "TREE[a⟨x c⟨y⟩⟩]");
}

TEST(Collapse, LargeMixedTreeGroupsUsePairwiseCommutation) {
  State s = stateWith({{"p", 0}});
  s.set(L("p"), Value::tree(parseTree("a⟨b b b b b b b b⟩")));
  UpdateMultiset um;
  std::string want = "TREE[a⟨";
  for (std::uint64_t i = 0; i < 8; ++i) {
    if (i % 2 == 0) {
      um.add(SharedUpdate{L("p"), "tree_replace",
                          {Value::tuple({N(i)}), Value::tree(parseTree("x"))}});
      want += i == 0 ? "x" : " x";
    } else {
      um.add(SharedUpdate{L("p"), "tree_append",
                          {Value::tuple({N(i)}), Value::tuple({Value::tree(parseTree("y"))})}});
      want += " b⟨y⟩";
    }
  }
  UpdateSet u = collapse(s, um);
  ASSERT_TRUE(u.consistent);
  EXPECT_EQ(printValue(u.updates.at(L("p"))), want + "⟩]");

  // Nested paths do not commute.
  um.add(SharedUpdate{L("p"), "tree_replace", {Value::tuple({}), Value::tree(parseTree("z"))}});
  EXPECT_FALSE(collapse(s, um).consistent);
}

TEST(Collapse, MatchesEveryPermutationOnRandomGroups) {
  testing::Gen g(21);
  State s = stateWith({{"g", 0}});
  for (int i = 0; i < 200; ++i) {
    auto group = testing::randomSharedGroup(g, g.range(1, 6), g.chance(0.3));
    UpdateMultiset um;
    for (const SharedUpdate& u : group) um.add(u);
    UpdateSet u = collapse(s, um);
    std::sort(group.begin(), group.end());
    std::optional<Value> agreed;
    bool disagree = false;
    do {
      auto v = testing::referenceFold(Value::undef(), group);
      if (!v || (agreed && !(*agreed == *v))) disagree = true;
      if (v && !agreed) agreed = v;
    } while (std::next_permutation(group.begin(), group.end()));
    if (disagree) {
      EXPECT_FALSE(u.consistent);
    } else {
      ASSERT_TRUE(u.consistent);
      EXPECT_EQ(u.updates.at(L("g")), *agreed);
    }
  }
}

TEST(Apply, PointwiseOverwriteAndStutter) {
  State s = stateWith({{"f", 0}, {"g", 0}});
  s.set(L("f"), N(0));
  s.set(L("g"), N(4));
  EXPECT_EQ(applyUpdateSet(s, UpdateSet{}), s);
  UpdateSet u;
  u.updates[L("f")] = N(5);
  State t = applyUpdateSet(s, u);
  EXPECT_EQ(t.get(L("f")), N(5));
  EXPECT_EQ(t.get(L("g")), N(4));
  u.consistent = false;
  EXPECT_EQ(applyUpdateSet(s, u), s);
}

TEST(Subsumption, NodeSublocationsOfATreeLocation) {
  State s = stateWith({{"pgm", 0}, {"f", 0}, {"g", 0}});
  s.set(L("pgm"), Value::tree(parseTree("a⟨b⟨c⟩⟩")));
  SubLocation root{L("pgm"), {}};
  SubLocation node{L("pgm"), {0, 0}};
  EXPECT_TRUE(subsumes(root, node, s));
  EXPECT_TRUE(dependsOn(node, root, s));
  EXPECT_TRUE(subsumes(root, root, s));
  EXPECT_FALSE(subsumes(node, root, s));
  EXPECT_FALSE(subsumes(root, SubLocation{L("pgm"), {3}}, s));
  EXPECT_FALSE(subsumes(SubLocation{L("f"), {}}, SubLocation{L("g"), {}}, s));
}

TEST(Rename, IdentityAndSwap) {
  State s = stateWith({{"f", 1}});
  s.set(L("f", {A("a")}), A("b"));
  EXPECT_EQ(renameState(s, {{"a", "a"}, {"b", "b"}}), s);
  EXPECT_EQ(printState(renameState(s, {{"a", "a"}, {"b", "b"}})), printState(s));
  State t = renameState(s, {{"a", "b"}, {"b", "a"}});
  EXPECT_EQ(t.get(L("f", {A("b")})), A("a"));
  EXPECT_EQ(codeOf([&] { renameState(s, {{"a", "c"}, {"b", "c"}}); }),
            ErrorCode::PartialBijection);
  EXPECT_EQ(codeOf([&] { renameState(s, {{"a", "c"}}); }), ErrorCode::PartialBijection);
}

}  // namespace
}  // namespace rasm
