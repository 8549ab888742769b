// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "gen.hpp"
#include "plain_tree.hpp"
#include "rasm/error.hpp"
#include "rasm/text.hpp"
#include "rasm/tree.hpp"

namespace rasm {
namespace {

using testing::Gen;
using testing::Plain;
using testing::toPlain;

Tree T(const char* text) { return parseTree(text); }
Context C(const char* text) { return parseTreeValue(text).asContext(); }

// Preorder index of the first node labelled `label`.
NodeId find(const LabelledTree& t, const std::string& label) {
  for (std::uint32_t o = 0; o < t.nodeCount(); ++o) {
    if (t.label(NodeId{o}).name() == label) return NodeId{o};
  }
  throw std::runtime_error("no node " + label);
}

std::vector<Plain> plains(const Hedge& h) {
  std::vector<Plain> out;
  for (const Tree& t : h) out.push_back(toPlain(t));
  return out;
}

template <typename F>
ErrorCode codeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Tree, LeafPrintsAsItsLabel) { EXPECT_EQ(printTree(Tree::leaf(Label("a"))), "a"); }

TEST(Tree, RootIsZeroAndNodesArePreorder) {
  Tree t = T("a⟨b⟨x⟩ c⟩");
  EXPECT_EQ(t.root().index, 0u);
  EXPECT_EQ(t.label(NodeId{1}).name(), "b");
  EXPECT_EQ(t.label(NodeId{2}).name(), "x");
  EXPECT_EQ(t.label(NodeId{3}).name(), "c");
  EXPECT_EQ(t.subtreeSize(NodeId{1}), 2u);
  EXPECT_TRUE(t.isProperAncestor(NodeId{0}, NodeId{2}));
  EXPECT_FALSE(t.isProperAncestor(NodeId{2}, NodeId{2}));
}

TEST(Tree, PathsRoundTrip) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    Tree t = testing::randomTree(g);
    for (std::uint32_t o = 0; o < t.nodeCount(); ++o) {
      auto back = t.nodeAt(t.pathOf(NodeId{o}));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(back->index, o);
    }
  }
}

TEST(Tree, ValuedInteriorNodesAreRejected) {
  TreeBuilder b;
  auto r = b.add(Label("a"), Value::nat(1));
  b.add(Label("b"), std::nullopt, r);
  EXPECT_THROW(b.finish(), Error);
}

TEST(Tree, FromRepRejectsHoles) {
  TreeBuilder b;
  auto r = b.add(Label("a"));
  b.add(Label::xi(), std::nullopt, r);
  auto rep = b.finish();
  EXPECT_EQ(codeOf([&] { Tree::fromRep(rep); }), ErrorCode::NotATree);
  EXPECT_EQ(Context::fromRep(rep).xiCount(), 1u);
}

TEST(Selectors, SubtreeOfRootIsTheTree) {
  Tree t = T("a⟨b⟨x⟩ c⟩");
  EXPECT_TRUE(treesEqual(subtree(t, t.root()), t));
}

TEST(Selectors, SubtreeExamples) {
  Tree t = T("a⟨b⟨x⟩ c⟩");
  EXPECT_EQ(printTree(subtree(t, find(t, "b"))), "b⟨x⟩");
  Tree u = T("a⟨b⟩");
  EXPECT_TRUE(treesEqual(subtree(u, find(u, "b")), Tree::leaf(Label("b"))));
}

TEST(Selectors, SubtreeMatchesRecursiveCopy) {
  Gen g(12);
  for (int i = 0; i < 300; ++i) {
    Tree t = testing::randomTree(g);
    NodeId o = testing::randomNode(g, t);
    Plain p = toPlain(t);
    EXPECT_EQ(toPlain(subtree(t, o)), *testing::nodeAt(p, o));
  }
}

TEST(Selectors, ContextExamples) {
  Tree t = T("a⟨b⟨x⟩ c⟩");
  Context c = contextAt(t, t.root(), find(t, "x"));
  EXPECT_EQ(printTree(c), "a⟨b⟨^⟩ c⟩");
  EXPECT_TRUE(treesEqual(substCT(c, T("x")), t));
  Context one = contextAt(t, find(t, "b"), find(t, "x"));
  EXPECT_EQ(printTree(one), "b⟨^⟩");
  EXPECT_EQ(codeOf([&] { contextAt(t, find(t, "b"), find(t, "b")); }), ErrorCode::NotAnAncestor);
  EXPECT_EQ(codeOf([&] { contextAt(t, find(t, "c"), find(t, "x")); }), ErrorCode::NotAnAncestor);
}

TEST(Selectors, ContextMatchesHoleReplacement) {
  Gen g(13);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Tree t = testing::randomTree(g);
    NodeId o2 = testing::randomNode(g, t);
    auto parent = t.parent(o2);
    if (!parent) continue;
    NodeId o1 = *parent;
    while (g.chance(0.5) && t.parent(o1)) o1 = *t.parent(o1);
    Plain expected = toPlain(t, o1);
    // Position of o2 inside the subtree rooted at o1, in preorder.
    NodeId rel{o2.index - o1.index};
    *testing::nodeAt(expected, rel) = Plain{"^", std::nullopt, {}};
    Context c = contextAt(t, o1, o2);
    EXPECT_EQ(toPlain(c), expected);
    EXPECT_EQ(c.xiCount(), 1u);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Substitution, TreeIntoTreeExamples) {
  Tree t = T("a⟨b c⟩");
  EXPECT_TRUE(treesEqual(substTT(t, t.root(), T("z")), T("z")));
  EXPECT_EQ(printTree(substTT(t, find(t, "b"), T("d⟨e⟩"))), "a⟨d⟨e⟩ c⟩");
  Tree u = T("a⟨b⟩");
  EXPECT_EQ(printTree(substTT(u, find(u, "b"), u)), "a⟨a⟨b⟩⟩");
}

TEST(Substitution, TreeIntoTreeMatchesRebuild) {
  Gen g(14);
  for (int i = 0; i < 300; ++i) {
    Tree t = testing::randomTree(g);
    Tree t2 = testing::randomTree(g, {3, 3});
    NodeId o = testing::randomNode(g, t);
    Plain expected = toPlain(t);
    *testing::nodeAt(expected, o) = toPlain(t2);
    EXPECT_EQ(toPlain(substTT(t, o, t2)), expected);
  }
}

TEST(Substitution, ContextIntoTreeExamples) {
  Tree t = T("a⟨b⟩");
  EXPECT_EQ(printTree(substTC(t, find(t, "b"))), "a⟨^⟩");
  Tree u = T("a⟨b c⟩");
  Context viaCc = substCC(substTC(u, find(u, "c")), C("d⟨^⟩"));
  Context direct = substTC(u, find(u, "c"), C("d⟨^⟩"));
  EXPECT_EQ(printTree(direct), "a⟨b d⟨^⟩⟩");
  EXPECT_TRUE(treesEqual(direct, viaCc));
}

TEST(Substitution, ContextIntoContextExamples) {
  Context c = C("a⟨^⟩");
  EXPECT_TRUE(treesEqual(substCC(Context::hole(), c), c));
  EXPECT_TRUE(treesEqual(substCC(c, Context::hole()), c));
  EXPECT_EQ(printTree(substCC(c, C("b⟨^ d⟩"))), "a⟨b⟨^ d⟩⟩");
}

TEST(Substitution, TreeIntoContextExamples) {
  Tree t = T("b");
  EXPECT_TRUE(treesEqual(substCT(Context::hole(), t), t));
  EXPECT_EQ(printTree(substCT(C("a⟨^⟩"), t)), "a⟨b⟩");
}

TEST(Substitution, HoleFillingMatchesRebuild) {
  Gen g(15);
  for (int i = 0; i < 300; ++i) {
    Context c1 = testing::randomContext(g);
    Context c2 = testing::randomContext(g);
    Tree t = testing::randomTree(g, {3, 3});
    EXPECT_EQ(toPlain(substCT(c1, t)), testing::fillHoles(toPlain(c1), {toPlain(t)}).front());
    Context cc = substCC(c1, c2);
    EXPECT_EQ(toPlain(cc), testing::fillHoles(toPlain(c1), {toPlain(c2)}).front());
    EXPECT_EQ(cc.xiCount(), 1u);
  }
}

TEST(Operators, LabelHedge) {
  EXPECT_TRUE(treesEqual(labelHedge(Label("a"), {}), Tree::leaf(Label("a"))));
  EXPECT_EQ(printTree(labelHedge(Label("a"), {T("b⟨c⟩"), T("d")})), "a⟨b⟨c⟩ d⟩");
  EXPECT_EQ(codeOf([] { labelHedge(Label::xi(), {}); }), ErrorCode::XiLabelForbidden);
}

TEST(Operators, LabelContext) {
  EXPECT_EQ(printTree(labelContext(Label("a"), Context::hole())), "a⟨^⟩");
  Context c = labelContext(Label("b"), C("a⟨^⟩"));
  EXPECT_EQ(printTree(c), "b⟨a⟨^⟩⟩");
  EXPECT_EQ(c.xiCount(), 1u);
}

TEST(Operators, Extensions) {
  Context c = C("a⟨u⟨^⟩⟩");
  EXPECT_TRUE(treesEqual(leftExtend({}, c), c));
  EXPECT_EQ(printTree(rightExtend({T("t1"), T("t2")}, c)), "a⟨u⟨^⟩ t1 t2⟩");
  EXPECT_EQ(printTree(leftExtend({T("t1")}, C("a⟨s ^⟩"))), "a⟨t1 s ^⟩");
  EXPECT_EQ(codeOf([] { leftExtend({Tree::leaf(Label("t"))}, Context::hole()); }),
            ErrorCode::TrivialContextNotExtendable);
}

TEST(Operators, ExtensionsMatchRebuild) {
  Gen g(16);
  for (int i = 0; i < 300; ++i) {
    Context c = testing::randomContext(g);
    if (c.isTrivial()) continue;
    Hedge h = testing::randomHedge(g, 3, {3, 3});
    Plain left = toPlain(c);
    Plain right = left;
    auto hp = plains(h);
    left.kids.insert(left.kids.begin(), hp.begin(), hp.end());
    right.kids.insert(right.kids.end(), hp.begin(), hp.end());
    EXPECT_EQ(toPlain(leftExtend(h, c)), left);
    EXPECT_EQ(toPlain(rightExtend(h, c)), right);
  }
}

TEST(Operators, Concat) {
  Hedge h = {T("t1"), T("t2")};
  EXPECT_EQ(concatHedges({}, h), h);
  EXPECT_EQ(concatHedges(h, {}), h);
  Hedge joined = concatHedges({T("t1")}, {T("t2"), T("t3")});
  ASSERT_EQ(joined.size(), 3u);
  EXPECT_EQ(printTree(joined[2]), "t3");
}

TEST(Operators, Inject) {
  Tree t = T("b⟨c⟩");
  EXPECT_TRUE(treesEqual(injectHedge(Context::hole(), {t}), t));
  EXPECT_EQ(printTree(injectHedge(C("a⟨b ^⟩"), {T("t1"), T("t2")})), "a⟨b t1 t2⟩");
  EXPECT_EQ(printTree(injectHedge(C("a⟨b ^⟩"), {})), "a⟨b⟩");
  EXPECT_EQ(codeOf([] { injectHedge(Context::hole(), {}); }), ErrorCode::EmptyHedgeAtRoot);
  Context c = C("a⟨^ d⟩");
  EXPECT_TRUE(treesEqual(injectContext(c, Context::hole()), c));
}

TEST(Operators, InjectHedgeMatchesRebuild) {
  Gen g(17);
  for (int i = 0; i < 300; ++i) {
    Context c = testing::randomContext(g);
    if (c.isTrivial()) continue;
    Hedge h = testing::randomHedge(g, 3, {3, 3});
    EXPECT_EQ(toPlain(injectHedge(c, h)), testing::fillHoles(toPlain(c), plains(h)).front());
    EXPECT_EQ(injectHedge(c, h).xiCount(), 0u);
  }
}

TEST(Equality, OrderSensitiveAndRenumberingInvariant) {
  Tree t = T("a⟨b c⟩");
  EXPECT_TRUE(treesEqual(t, t));
  // Rebuilding through an algebra operator renumbers every node.
  Tree rebuilt = labelHedge(Label("a"), {subtree(t, NodeId{1}), subtree(t, NodeId{2})});
  EXPECT_TRUE(treesEqual(rebuilt, t));
  EXPECT_FALSE(treesEqual(t, T("a⟨c b⟩")));
  EXPECT_FALSE(treesEqual(T("a=⟨1⟩"), T("a=⟨2⟩")));
}

TEST(Equality, SubtreeRelation) {
  EXPECT_TRUE(isSubtreeOf(T("b"), T("a⟨b c⟩")));
  EXPECT_TRUE(isSubtreeOf(T("a⟨b⟩"), T("a⟨b c⟩")));
  EXPECT_TRUE(isSubtreeOf(T("a⟨c⟩"), T("a⟨b c⟩")));
  EXPECT_FALSE(isSubtreeOf(T("a⟨b d⟩"), T("a⟨b c d⟩")));
  EXPECT_FALSE(isSubtreeOf(T("a⟨c b⟩"), T("a⟨b c⟩")));
}

}  // namespace
}  // namespace rasm
