// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/reflection.hpp"

#include <algorithm>

#include "rasm/error.hpp"
#include "rasm/eval.hpp"

namespace rasm {

const std::vector<std::string>& programLabels() {
  static const std::vector<std::string> labels = {
      "pgm",  "signature", "rule",   "func", "name", "arity",   "update", "term",
      "if",   "bool",      "forall", "par",  "let",  "partial", "import"};
  return labels;
}

bool isProgramLabel(std::string_view name) {
  const auto& l = programLabels();
  return std::find(l.begin(), l.end(), name) != l.end();
}

// ---------------------------------------------------------------------------
// drop

namespace {

Tree valued(const char* label, Value v) { return Tree::leaf(Label(label), std::move(v)); }

Tree node(const char* label, const Hedge& children) { return labelHedge(Label(label), children); }

Value dropTerms(const std::vector<Term>& ts) {
  std::vector<Value> items;
  items.reserve(ts.size());
  for (const Term& t : ts) items.push_back(dropTerm(t));
  return Value::tuple(std::move(items));
}

Tree wrapRule(const Rule& r) { return node("rule", {dropRule(r)}); }

}  // namespace

Value dropTerm(const Term& t) { return Value::term(t); }

Value dropSymbol(const FunctionSymbol& f) { return Value::atom(f.name); }

Tree dropRule(const Rule& r) {
  switch (r.kind()) {
    case Rule::Kind::Assign:
      return node("update", {valued("func", Value::atom(r.name())),
                             valued("term", dropTerms(r.args())),
                             valued("term", dropTerm(r.term()))});
    case Rule::Kind::Partial:
      return node("partial", {valued("func", Value::atom(r.name())),
                              valued("func", Value::atom(r.opName())),
                              valued("term", dropTerms(r.args())),
                              valued("term", dropTerms(r.operands()))});
    case Rule::Kind::If:
      return node("if", {valued("bool", dropTerm(r.term())), wrapRule(r.rules()[0]),
                         wrapRule(r.rules()[1])});
    case Rule::Kind::Par: {
      Hedge h;
      for (const Rule& sub : r.rules()) h.push_back(wrapRule(sub));
      return node("par", h);
    }
    case Rule::Kind::Forall:
      return node("forall", {valued("term", dropTerm(Term::var(r.name()))),
                             valued("bool", dropTerm(r.term())), wrapRule(r.body())});
    case Rule::Kind::Let:
      return node("let", {valued("term", dropTerm(Term::var(r.name()))),
                          valued("term", dropTerm(r.term())), wrapRule(r.body())});
    case Rule::Kind::Import:
      return node("import",
                  {valued("term", dropTerm(Term::var(r.name()))), wrapRule(r.body())});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown rule kind");
}

Tree dropSignature(const Signature& sig) {
  Hedge funcs;
  for (const FunctionSymbol& f : sig.symbols()) {
    funcs.push_back(node("func", {valued("name", dropSymbol(f)),
                                  valued("arity", Value::nat(f.arity))}));
  }
  return node("signature", funcs);
}

Tree dropProgram(const Signature& sig, const Rule& r) {
  return node("pgm", {dropSignature(sig), wrapRule(r)});
}

// ---------------------------------------------------------------------------
// raise

namespace {

class Raiser {
 public:
  explicit Raiser(const Tree& t) : t_(t) {}

  Rule rule(NodeId o) {
    const std::string& l = t_.label(o).name();
    auto kids = children(o);
    if (l == "update") {
      expectShape(o, {"func", "term", "term"});
      return Rule::assign(symbolName(kids[0]), termList(kids[1]), term(kids[2]));
    }
    if (l == "partial") {
      expectShape(o, {"func", "func", "term", "term"});
      return Rule::partial(symbolName(kids[0]), termList(kids[2]), symbolName(kids[1]),
                           termList(kids[3]));
    }
    if (l == "if") {
      expectShape(o, {"bool", "rule", "rule"});
      return Rule::ifThenElse(term(kids[0]), wrapped(kids[1]), wrapped(kids[2]));
    }
    if (l == "par") {
      if (t_.value(o)) fail(o, "par node carries a value");
      std::vector<Rule> rules;
      for (NodeId k : kids) {
        if (t_.label(k).name() != "rule") fail(k, "expected rule");
        rules.push_back(wrapped(k));
      }
      return Rule::par(std::move(rules));
    }
    if (l == "forall") {
      expectShape(o, {"term", "bool", "rule"});
      return Rule::forall(variable(kids[0]), term(kids[1]), wrapped(kids[2]));
    }
    if (l == "let") {
      expectShape(o, {"term", "term", "rule"});
      return Rule::let(variable(kids[0]), term(kids[1]), wrapped(kids[2]));
    }
    if (l == "import") {
      expectShape(o, {"term", "rule"});
      return Rule::import(variable(kids[0]), wrapped(kids[1]));
    }
    fail(o, "expected a rule node, found " + l);
  }

  // rule⟨T⟩
  Rule wrapped(NodeId o) {
    auto kids = children(o);
    if (kids.size() != 1 || t_.value(o)) fail(o, "rule node must have exactly one child");
    return rule(kids[0]);
  }

  Signature signature(NodeId o) {
    if (t_.label(o).name() != "signature") fail(o, "expected signature");
    if (t_.value(o)) fail(o, "signature node carries a value");
    Signature sig;
    for (NodeId f : children(o)) {
      expectShape(f, {}, false);
      auto parts = children(f);
      if (t_.label(f).name() != "func" || parts.size() != 2) {
        fail(f, "expected func⟨name arity⟩");
      }
      expectLeaf(parts[0], "name");
      expectLeaf(parts[1], "arity");
      const Value& name = *t_.value(parts[0]);
      const Value& arity = *t_.value(parts[1]);
      if (!name.isAtom()) fail(parts[0], "function name must be an atom");
      if (!arity.isNat() || arity.asNat() > UINT32_MAX) fail(parts[1], "arity must be a natural");
      FunctionSymbol sym{name.atomName(), static_cast<std::uint32_t>(arity.asNat()),
                         SymbolKind::Dynamic};
      if (sig.contains(sym.name)) fail(f, "duplicate function symbol " + sym.name);
      sig.add(sym);
    }
    return sig;
  }

  [[noreturn]] void fail(NodeId o, const std::string& what) const {
    throw Error(ErrorCode::MalformedEncoding, "at " + formatPath(t_.pathOf(o)) + ": " + what);
  }

 private:
  std::vector<NodeId> children(NodeId o) const {
    std::vector<NodeId> out;
    for (std::uint32_t c : t_.children(o)) out.push_back(NodeId{c});
    return out;
  }

  void expectShape(NodeId o, std::initializer_list<const char*> labels, bool exact = true) {
    if (t_.value(o)) fail(o, "interior node carries a value");
    if (!exact) return;
    auto kids = children(o);
    if (kids.size() != labels.size()) {
      fail(o, t_.label(o).name() + " expects " + std::to_string(labels.size()) + " children");
    }
    std::size_t i = 0;
    for (const char* l : labels) {
      if (t_.label(kids[i]).name() != l) fail(kids[i], std::string("expected ") + l);
      ++i;
    }
  }

  void expectLeaf(NodeId o, const char* label) const {
    if (t_.label(o).name() != label) fail(o, std::string("expected ") + label);
    if (!t_.isLeaf(o) || !t_.value(o)) fail(o, std::string(label) + " must be a valued leaf");
  }

  const Value& leafValue(NodeId o) const {
    if (!t_.isLeaf(o) || !t_.value(o)) fail(o, "expected a valued leaf");
    return *t_.value(o);
  }

  std::string symbolName(NodeId o) const {
    const Value& v = leafValue(o);
    if (!v.isAtom()) fail(o, "function name must be an atom");
    return v.atomName();
  }

  Term term(NodeId o) const {
    const Value& v = leafValue(o);
    if (!v.isTerm()) fail(o, "expected a dropped term");
    return v.asTerm();
  }

  std::vector<Term> termList(NodeId o) const {
    const Value& v = leafValue(o);
    if (!v.isTuple()) fail(o, "expected a tuple of dropped terms");
    std::vector<Term> out;
    for (const Value& x : v.items()) {
      if (!x.isTerm()) fail(o, "expected a tuple of dropped terms");
      out.push_back(x.asTerm());
    }
    return out;
  }

  std::string variable(NodeId o) const {
    Term t = term(o);
    if (t.kind() != Term::Kind::Var) fail(o, "expected a variable");
    return t.name();
  }

  const Tree& t_;
};

}  // namespace

Term raiseTerm(const Value& v) {
  if (!v.isTerm()) throw Error(ErrorCode::MalformedEncoding, "value is not a dropped term");
  return v.asTerm();
}

FunctionSymbol raiseSymbol(const Value& name, const Value& arity) {
  if (!name.isAtom() || !arity.isNat() || arity.asNat() > UINT32_MAX) {
    throw Error(ErrorCode::MalformedEncoding, "expected an atom name and a natural arity");
  }
  return {name.atomName(), static_cast<std::uint32_t>(arity.asNat()), SymbolKind::Dynamic};
}

Rule raiseRule(const Tree& t) { return Raiser(t).rule(t.root()); }

Signature raiseSignature(const Tree& t) { return Raiser(t).signature(t.root()); }

namespace {

Tree uniqueChild(const Tree& pgm, const char* label) {
  std::optional<NodeId> hit;
  for (std::uint32_t c : pgm.children(pgm.root())) {
    if (pgm.label(NodeId{c}).name() == label) {
      if (hit) throw Error(ErrorCode::MalformedProgramTree, std::string("duplicate ") + label);
      hit = NodeId{c};
    }
  }
  if (!hit) throw Error(ErrorCode::MalformedProgramTree, std::string("missing ") + label);
  return subtree(pgm, *hit);
}

}  // namespace

Tree extractSignatureSubtree(const Tree& pgm) { return uniqueChild(pgm, "signature"); }

Tree extractRuleSubtree(const Tree& pgm) { return uniqueChild(pgm, "rule"); }

Program raiseProgram(const Tree& pgm) {
  if (pgm.label(pgm.root()).name() != "pgm" || pgm.value(pgm.root())) {
    throw Error(ErrorCode::MalformedProgramTree, "root must be an unvalued pgm node");
  }
  if (pgm.children(pgm.root()).size() != 2) {
    throw Error(ErrorCode::MalformedProgramTree, "pgm must have exactly two children");
  }
  Tree sigTree = extractSignatureSubtree(pgm);
  Tree ruleTree = extractRuleSubtree(pgm);
  try {
    Signature sig = raiseSignature(sigTree);
    if (const FunctionSymbol* p = sig.find(std::string(kPgm)); !p || p->arity != 0) {
      throw Error(ErrorCode::MalformedProgramTree, "signature must declare pgm/0");
    }
    Raiser r(ruleTree);
    return {std::move(sig), r.wrapped(ruleTree.root())};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MalformedEncoding) throw;
    throw Error(ErrorCode::MalformedProgramTree, e.what());
  }
}

// ---------------------------------------------------------------------------
// β

namespace {

std::vector<std::string> sortedFree(const Term& head, const Term& guard) {
  std::set<std::string> vs = freeVariables(head);
  auto g = freeVariables(guard);
  vs.insert(g.begin(), g.end());
  return {vs.begin(), vs.end()};
}

bool isTrueLiteral(const Term& t) {
  return t.kind() == Term::Kind::Literal && t.value().isTrue();
}

Term comprehensionOf(Term head, Term guard) {
  auto binders = sortedFree(head, guard);
  return Term::comprehension(std::move(head), std::move(binders), std::move(guard));
}

Term conjoin(const Term& element, const Term& phi) {
  Term head = element;
  Term guard = Term::literal(Value::boolean(true));
  if (element.kind() == Term::Kind::Comprehension) {
    head = element.head();
    guard = element.guard();
  }
  Term g = isTrueLiteral(guard) ? phi : Term::op("and", {guard, phi});
  return comprehensionOf(std::move(head), std::move(g));
}

Term headOf(std::vector<Term> parts) {
  if (parts.size() == 1) return parts[0];
  return Term::op("tuple", std::move(parts));
}

}  // namespace

std::vector<Term> betaOfRule(const Rule& r) {
  const Term yes = Term::literal(Value::boolean(true));
  switch (r.kind()) {
    case Rule::Kind::Assign: {
      std::vector<Term> parts{r.term()};
      parts.insert(parts.end(), r.args().begin(), r.args().end());
      return {comprehensionOf(headOf(std::move(parts)), yes)};
    }
    case Rule::Kind::Partial: {
      std::vector<Term> opArgs{Term::apply(r.name(), r.args())};
      opArgs.insert(opArgs.end(), r.operands().begin(), r.operands().end());
      std::vector<Term> parts = r.args();
      parts.push_back(Term::op(r.opName(), std::move(opArgs)));
      return {comprehensionOf(headOf(std::move(parts)), yes)};
    }
    case Rule::Kind::Par: {
      std::vector<Term> out;
      for (const Rule& sub : r.rules()) {
        auto b = betaOfRule(sub);
        out.insert(out.end(), b.begin(), b.end());
      }
      return out;
    }
    case Rule::Kind::If: {
      const Term& phi = r.term();
      const Term notPhi = Term::op("not", {phi});
      std::vector<Term> out{comprehensionOf(phi, yes)};
      for (const Term& e : betaOfRule(r.rules()[0])) out.push_back(conjoin(e, phi));
      for (const Term& e : betaOfRule(r.rules()[1])) out.push_back(conjoin(e, notPhi));
      return out;
    }
    case Rule::Kind::Forall: {
      const Term& phi = r.term();
      const Term notPhi = Term::op("not", {phi});
      auto inner = betaOfRule(r.body());
      std::vector<Term> out;
      for (const Term& e : inner) out.push_back(conjoin(e, phi));
      for (const Term& e : inner) out.push_back(conjoin(e, notPhi));
      return out;
    }
    case Rule::Kind::Let: {
      std::vector<Term> out{r.term()};
      auto b = betaOfRule(substitute(r.body(), r.name(), r.term()));
      out.insert(out.end(), b.begin(), b.end());
      return out;
    }
    case Rule::Kind::Import: return betaOfRule(r.body());
  }
  return {};
}

std::vector<Term> beta(const Tree& ruleTree) { return betaOfRule(raiseRule(ruleTree)); }

Term closeBetaTerm(const Term& t) {
  if (t.kind() == Term::Kind::Comprehension) return t;
  return comprehensionOf(t, Term::literal(Value::boolean(true)));
}

// ---------------------------------------------------------------------------
// step

namespace {

const Tree& programTreeOf(const Value& v, std::optional<Tree>& buf) {
  if (!v.isTree()) {
    throw Error(ErrorCode::MalformedProgramTree,
                "pgm holds a " + std::string(to_string(v.kind())) + ", not a tree");
  }
  return buf.emplace(v.asTree());
}

bool isReserveName(const std::string& name) { return !name.empty() && name[0] == '$'; }

}  // namespace

StepReport step(const State& s, const OperatorRegistry& ops) {
  std::optional<Tree> buf;
  const Tree& pgm = programTreeOf(s.get(std::string(kPgm)), buf);
  Program prog = raiseProgram(pgm);
  for (const FunctionSymbol& f : s.signature().symbols()) {
    const FunctionSymbol* g = prog.signature.find(f.name);
    if (!g) throw Error(ErrorCode::SignatureShrunk, "pgm does not declare " + f.name);
    if (g->arity != f.arity) {
      throw Error(ErrorCode::MalformedProgramTree, "pgm declares " + f.name + " with arity " +
                                                       std::to_string(g->arity));
    }
  }
  Signature sig = s.signature().unionWith(prog.signature);

  StepReport report;
  report.rule = prog.rule;
  report.signature = sig;
  Evaluator ev(s, sig, ops);
  report.multiset = ev.rule({}, prog.rule);
  report.updateSet = collapse(s, report.multiset, ops);
  report.consistent = report.updateSet.consistent;
  if (!report.consistent) {
    report.next = s;
    return report;
  }

  State next = s;
  next.setSignature(sig);
  for (const auto& [loc, v] : report.updateSet.updates) next.set(loc, v);
  next.reserve() = ev.cursor();

  std::optional<Tree> nextBuf;
  const Tree& nextPgm = programTreeOf(next.get(std::string(kPgm)), nextBuf);
  Program nextProg = raiseProgram(nextPgm);
  for (const FunctionSymbol& f : prog.signature.symbols()) {
    if (!nextProg.signature.find(f.name)) {
      throw Error(ErrorCode::SignatureShrunk, "step removes " + f.name + " from pgm");
    }
  }
  for (const FunctionSymbol& f : nextProg.signature.symbols()) {
    const FunctionSymbol* old = sig.find(f.name);
    if (old && old->arity != f.arity) {
      throw Error(ErrorCode::MalformedProgramTree,
                  "step redeclares " + f.name + " with arity " + std::to_string(f.arity));
    }
    if (!old && !isReserveName(f.name)) {
      throw Error(ErrorCode::MalformedProgramTree,
                  "new function symbol " + f.name + " is not a reserve name");
    }
  }
  next.setSignature(sig.unionWith(nextProg.signature));
  report.next = std::move(next);
  return report;
}

}  // namespace rasm
