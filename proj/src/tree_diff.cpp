// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/tree_diff.hpp"

#include <map>

#include "rasm/error.hpp"
#include "rasm/reflection.hpp"
#include "rasm/text.hpp"

namespace rasm {

AlgebraTerm AlgebraTerm::ref(NodePath path) {
  return AlgebraTerm(std::make_shared<const Node>(Node{Kind::Ref, std::move(path), Label("_"), {}, Tree::leaf(Label("_"))}));
}

AlgebraTerm AlgebraTerm::labelHedge(Label label, std::vector<AlgebraTerm> hedge) {
  return AlgebraTerm(std::make_shared<const Node>(
      Node{Kind::LabelHedge, {}, std::move(label), std::move(hedge), Tree::leaf(Label("_"))}));
}

AlgebraTerm AlgebraTerm::rightExtend(AlgebraTerm base, std::vector<AlgebraTerm> hedge) {
  std::vector<AlgebraTerm> ops{std::move(base)};
  ops.insert(ops.end(), hedge.begin(), hedge.end());
  return AlgebraTerm(
      std::make_shared<const Node>(Node{Kind::RightExtend, {}, Label("_"), std::move(ops), Tree::leaf(Label("_"))}));
}

AlgebraTerm AlgebraTerm::literal(Tree t) {
  return AlgebraTerm(
      std::make_shared<const Node>(Node{Kind::Literal, {}, Label("_"), {}, std::move(t)}));
}

std::size_t AlgebraTerm::size() const {
  std::size_t n = 1;
  for (const AlgebraTerm& o : operands()) n += o.size();
  return n;
}

Tree evaluateAlgebraTerm(const AlgebraTerm& theta, const Tree& t) {
  switch (theta.kind()) {
    case AlgebraTerm::Kind::Ref: {
      auto o = t.nodeAt(theta.path());
      if (!o) throw Error(ErrorCode::UnknownNode, "no node at " + formatPath(theta.path()));
      return subtree(t, *o);
    }
    case AlgebraTerm::Kind::LabelHedge: {
      Hedge h;
      for (const AlgebraTerm& c : theta.operands()) h.push_back(evaluateAlgebraTerm(c, t));
      return labelHedge(theta.label(), h);
    }
    case AlgebraTerm::Kind::RightExtend: {
      Tree base = evaluateAlgebraTerm(theta.operands()[0], t);
      Hedge h;
      for (std::size_t i = 1; i < theta.operands().size(); ++i) {
        h.push_back(evaluateAlgebraTerm(theta.operands()[i], t));
      }
      return rightExtend(h, base);
    }
    case AlgebraTerm::Kind::Literal: return theta.tree();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algebra term");
}

std::string printAlgebraTerm(const AlgebraTerm& theta) {
  switch (theta.kind()) {
    case AlgebraTerm::Kind::Ref: return "subtree@" + formatPath(theta.path());
    case AlgebraTerm::Kind::Literal: return printTree(theta.tree());
    case AlgebraTerm::Kind::LabelHedge: {
      std::string out = "label_hedge(" + theta.label().name();
      if (theta.operands().empty()) out += ", ε";
      for (const AlgebraTerm& c : theta.operands()) out += ", " + printAlgebraTerm(c);
      return out + ")";
    }
    case AlgebraTerm::Kind::RightExtend: {
      std::string out = "right_extend(" + printAlgebraTerm(theta.operands()[0]);
      for (std::size_t i = 1; i < theta.operands().size(); ++i) {
        out += ", " + printAlgebraTerm(theta.operands()[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

// Structural equality of the subtree of a at i and the subtree of b at j,
// using the contiguous preorder ranges.
bool sameSubtree(const detail::TreeRep& a, std::uint32_t i, const detail::TreeRep& b,
                 std::uint32_t j) {
  const std::uint32_t n = a.nodes[i].size;
  if (b.nodes[j].size != n) return false;
  for (std::uint32_t k = 0; k < n; ++k) {
    const auto& x = a.nodes[i + k];
    const auto& y = b.nodes[j + k];
    if (!(x.label == y.label) || x.children.size() != y.children.size() || x.value != y.value) {
      return false;
    }
  }
  return true;
}

std::optional<NodeId> childLabelled(const Tree& t, const char* label) {
  for (std::uint32_t c : t.children(t.root())) {
    if (t.label(NodeId{c}).name() == label) return NodeId{c};
  }
  return std::nullopt;
}

void validatePair(const Tree& t, const Tree& t2) {
  Program a = raiseProgram(t);
  Program b = raiseProgram(t2);
  for (const FunctionSymbol& f : a.signature.symbols()) {
    const FunctionSymbol* g = b.signature.find(f.name);
    if (!g || g->arity != f.arity) {
      throw Error(ErrorCode::SignatureShrunk, "target drops " + f.name + "/" +
                                                  std::to_string(f.arity));
    }
  }
}

// Number of leading children shared by the two signature nodes, if the source
// signature is a proper prefix of the target one.
std::optional<std::size_t> signaturePrefix(const Tree& t, NodeId s, const Tree& t2, NodeId s2) {
  auto a = t.children(s);
  auto b = t2.children(s2);
  if (a.size() >= b.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sameSubtree(t.rep(), a[i], t2.rep(), b[i])) return std::nullopt;
  }
  return a.size();
}

class ThetaBuilder {
 public:
  ThetaBuilder(const Tree& t, const Tree& t2) : t_(t), t2_(t2) {
    for (std::uint32_t o = 0; o < t.nodeCount(); ++o) {
      index_[t.subtreeHash(NodeId{o})].push_back(o);
    }
  }

  AlgebraTerm build() {
    if (auto hit = reuse(t2_.root())) return AlgebraTerm::ref(t_.pathOf(*hit));
    // The roots are both pgm; handle the signature child specially.
    auto s = childLabelled(t_, "signature");
    std::vector<AlgebraTerm> kids;
    for (std::uint32_t c : t2_.children(t2_.root())) {
      NodeId o2{c};
      if (t2_.label(o2).name() == "signature" && s && !reuse(o2)) {
        if (auto k = signaturePrefix(t_, *s, t2_, o2)) {
          std::vector<AlgebraTerm> added;
          auto b = t2_.children(o2);
          for (std::size_t i = *k; i < b.size(); ++i) added.push_back(rec(NodeId{b[i]}));
          kids.push_back(AlgebraTerm::rightExtend(AlgebraTerm::ref(t_.pathOf(*s)), added));
          continue;
        }
      }
      kids.push_back(rec(o2));
    }
    return AlgebraTerm::labelHedge(t2_.label(t2_.root()), std::move(kids));
  }

 private:
  std::optional<NodeId> reuse(NodeId o2) const {
    auto it = index_.find(t2_.subtreeHash(o2));
    if (it == index_.end()) return std::nullopt;
    for (std::uint32_t o : it->second) {
      if (sameSubtree(t_.rep(), o, t2_.rep(), o2.index)) return NodeId{o};
    }
    return std::nullopt;
  }

  AlgebraTerm rec(NodeId o2) {
    if (auto hit = reuse(o2)) return AlgebraTerm::ref(t_.pathOf(*hit));
    const std::string& l = t2_.label(o2).name();
    if (t2_.isLeaf(o2) || l == "update" || l == "partial") {
      return AlgebraTerm::literal(subtree(t2_, o2));
    }
    std::vector<AlgebraTerm> kids;
    for (std::uint32_t c : t2_.children(o2)) kids.push_back(rec(NodeId{c}));
    return AlgebraTerm::labelHedge(t2_.label(o2), std::move(kids));
  }

  const Tree& t_;
  const Tree& t2_;
  std::map<std::size_t, std::vector<std::uint32_t>> index_;
};

Value pathValue(const NodePath& p) {
  std::vector<Value> items;
  for (std::uint32_t i : p) items.push_back(Value::nat(i));
  return Value::tuple(std::move(items));
}

class UpdateBuilder {
 public:
  UpdateBuilder(const Tree& t, const Tree& t2) : t_(t), t2_(t2) {}

  void diff(NodeId o, NodeId o2, bool underRoot) {
    if (sameSubtree(t_.rep(), o.index, t2_.rep(), o2.index)) return;
    if (underRoot && t2_.label(o2).name() == "signature" && t_.label(o).name() == "signature") {
      if (auto k = signaturePrefix(t_, o, t2_, o2)) {
        std::vector<Value> added;
        auto b = t2_.children(o2);
        for (std::size_t i = *k; i < b.size(); ++i) {
          added.push_back(Value::tree(subtree(t2_, NodeId{b[i]})));
        }
        emit("tree_append", o, Value::tuple(std::move(added)));
        return;
      }
    }
    auto a = t_.children(o);
    auto b = t2_.children(o2);
    const bool sameShape = t_.label(o) == t2_.label(o2) && !a.empty() && a.size() == b.size() &&
                           !t_.value(o) && !t2_.value(o2);
    if (!sameShape) {
      emit("tree_replace", o, Value::tree(subtree(t2_, o2)));
      return;
    }
    const bool isRoot = o == t_.root();
    for (std::size_t i = 0; i < a.size(); ++i) diff(NodeId{a[i]}, NodeId{b[i]}, isRoot);
  }

  UpdateMultiset take() && { return std::move(out_); }

 private:
  void emit(const char* op, NodeId o, Value payload) {
    out_.add(SharedUpdate{Location{std::string(kPgm), {}}, op,
                          {pathValue(t_.pathOf(o)), std::move(payload)}});
  }

  const Tree& t_;
  const Tree& t2_;
  UpdateMultiset out_;
};

}  // namespace

AlgebraTerm treeDiffTheta(const Tree& t, const Tree& t2) {
  validatePair(t, t2);
  return ThetaBuilder(t, t2).build();
}

UpdateMultiset treeDiffUpdates(const Tree& t, const Tree& t2) {
  validatePair(t, t2);
  UpdateBuilder b(t, t2);
  b.diff(t.root(), t2.root(), false);
  return std::move(b).take();
}

}  // namespace rasm
