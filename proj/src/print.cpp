// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>
#include <sstream>

#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/reflection.hpp"
#include "rasm/text.hpp"

namespace rasm {

namespace {

constexpr const char* kOpen = "⟨";
constexpr const char* kClose = "⟩";

std::string joinValues(const std::vector<Value>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += printValue(vs[i]);
  }
  return out;
}

void printTreeNode(const LabelledTree& t, NodeId o, std::string& out) {
  out += t.label(o).name();
  if (const Value* v = t.value(o)) {
    out += "=";
    out += kOpen;
    out += printValue(*v);
    out += kClose;
    return;
  }
  auto kids = t.children(o);
  if (kids.empty()) return;
  out += kOpen;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ' ';
    printTreeNode(t, NodeId{kids[i]}, out);
  }
  out += kClose;
}

bool roundTripsAsRule(const Tree& t) {
  try {
    return dropRule(raiseRule(t)) == t;
  } catch (const Error&) {
    return false;
  }
}

// Operator precedence for the term printer; higher binds tighter.
enum Prec : int { kOr = 0, kAnd = 1, kNot = 2, kCmp = 3, kAdd = 4, kMul = 5, kAtom = 6 };

int precOf(const Term& t) {
  if (t.kind() != Term::Kind::Op) return kAtom;
  const std::string& n = t.name();
  if (n == "or" && t.args().size() >= 2) return kOr;
  if (n == "and" && t.args().size() >= 2) return kAnd;
  if (n == "not" && t.args().size() == 1) return kNot;
  if (t.args().size() == 2) {
    if (n == "=" || n == "!=" || n == "<" || n == "<=" || n == ">" || n == ">=") return kCmp;
    if (n == "+" || n == "-") return kAdd;
    if (n == "*") return kMul;
  }
  return kAtom;
}

class TermPrinter {
 public:
  std::string term(const Term& t, std::set<std::string>& scope, int minPrec = kOr) {
    std::string s = raw(t, scope);
    return precOf(t) < minPrec ? "(" + s + ")" : s;
  }

  std::string args(const std::vector<Term>& ts, std::set<std::string>& scope) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) out += ", ";
      out += term(ts[i], scope);
    }
    return out;
  }

 private:
  std::string raw(const Term& t, std::set<std::string>& scope) {
    switch (t.kind()) {
      case Term::Kind::Var: return scope.count(t.name()) ? t.name() : "?" + t.name();
      case Term::Kind::Literal: return literal(t.value());
      case Term::Kind::Apply:
        if (t.args().empty()) return scope.count(t.name()) ? t.name() + "()" : t.name();
        return t.name() + "(" + args(t.args(), scope) + ")";
      case Term::Kind::Comprehension: {
        std::set<std::string> inner = scope;
        inner.insert(t.binders().begin(), t.binders().end());
        std::string out = "{| " + term(t.head(), inner) + " |";
        for (std::size_t i = 0; i < t.binders().size(); ++i) {
          out += i ? ", " : " ";
          out += t.binders()[i];
        }
        return out + " : " + term(t.guard(), inner) + " |}";
      }
      case Term::Kind::Op: return op(t, scope);
    }
    return "?";
  }

  std::string op(const Term& t, std::set<std::string>& scope) {
    const std::string& n = t.name();
    const int p = precOf(t);
    switch (p) {
      case kOr:
      case kAnd: {
        std::string out;
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += " " + n + " ";
          out += term(t.args()[i], scope, p + 1);
        }
        return out;
      }
      case kNot: return "not " + term(t.args()[0], scope, kNot);
      case kCmp: return term(t.args()[0], scope, p + 1) + " " + n + " " +
                        term(t.args()[1], scope, p + 1);
      case kAdd:
      case kMul: return term(t.args()[0], scope, p) + " " + n + " " +
                        term(t.args()[1], scope, p + 1);
      default: break;
    }
    if (n == "tuple") {
      if (t.args().size() == 1) return "(" + term(t.args()[0], scope) + ",)";
      return "(" + args(t.args(), scope) + ")";
    }
    if (n == "multiset") return t.args().empty() ? "{||}" : "{| " + args(t.args(), scope) + " |}";
    return n + "(" + args(t.args(), scope) + ")";
  }

  static std::string literal(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Undef:
      case Value::Kind::Bool:
      case Value::Kind::Nat:
      case Value::Kind::Atom:
      case Value::Kind::Term:
      case Value::Kind::Tree:
      case Value::Kind::Context: return printValue(v);
      default: return "VAL[" + printValue(v) + "]";
    }
  }
};

class RulePrinter {
 public:
  explicit RulePrinter(bool singleLine) : single_(singleLine) {}

  void rule(const Rule& r, std::set<std::string>& scope, int indent) {
    switch (r.kind()) {
      case Rule::Kind::Assign:
        line(indent, target(r, scope) + " := " + terms_.term(r.term(), scope));
        return;
      case Rule::Kind::Partial:
        line(indent, target(r, scope) + " <<= " + r.opName() + "(" +
                         terms_.args(r.operands(), scope) + ")");
        return;
      case Rule::Kind::If:
        line(indent, "IF " + terms_.term(r.term(), scope) + " THEN");
        rule(r.rules()[0], scope, indent + 1);
        line(indent, "ELSE");
        rule(r.rules()[1], scope, indent + 1);
        line(indent, "ENDIF");
        return;
      case Rule::Kind::Par:
        line(indent, "PAR");
        for (const Rule& sub : r.rules()) rule(sub, scope, indent + 1);
        line(indent, "ENDPAR");
        return;
      case Rule::Kind::Forall: {
        std::set<std::string> inner = scope;
        inner.insert(r.name());
        line(indent, "FORALL " + r.name() + " WITH " + terms_.term(r.term(), inner) + " DO");
        rule(r.body(), inner, indent + 1);
        line(indent, "ENDDO");
        return;
      }
      case Rule::Kind::Let: {
        std::string head = "LET " + r.name() + " = " + terms_.term(r.term(), scope) + " IN";
        std::set<std::string> inner = scope;
        inner.insert(r.name());
        line(indent, head);
        rule(r.body(), inner, indent + 1);
        return;
      }
      case Rule::Kind::Import: {
        std::set<std::string> inner = scope;
        inner.insert(r.name());
        line(indent, "IMPORT " + r.name() + " DO");
        rule(r.body(), inner, indent + 1);
        return;
      }
    }
  }

  std::string str() && { return std::move(out_); }

 private:
  std::string target(const Rule& r, std::set<std::string>& scope) {
    if (r.args().empty()) return r.name();
    return r.name() + "(" + terms_.args(r.args(), scope) + ")";
  }

  void line(int indent, const std::string& text) {
    if (single_) {
      if (!out_.empty()) out_ += ' ';
      out_ += text;
    } else {
      out_.append(static_cast<std::size_t>(indent) * 2, ' ');
      out_ += text;
      out_ += '\n';
    }
  }

  bool single_;
  TermPrinter terms_;
  std::string out_;
};

}  // namespace

std::string printValue(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Undef: return "undef";
    case Value::Kind::Bool: return v.asBool() ? "true" : "false";
    case Value::Kind::Nat: return std::to_string(v.asNat());
    case Value::Kind::Atom: return "'" + v.atomName();
    case Value::Kind::Tuple:
      if (v.items().size() == 1) return "(" + printValue(v.items()[0]) + ",)";
      return "(" + joinValues(v.items()) + ")";
    case Value::Kind::Multiset:
      return v.items().empty() ? "{||}" : "{| " + joinValues(v.items()) + " |}";
    case Value::Kind::Tree: {
      Tree t = v.asTree();
      if (roundTripsAsRule(t)) return "RULE[" + printRule(raiseRule(t), true) + "]";
      return "TREE[" + printTree(t) + "]";
    }
    case Value::Kind::Context: return "TREE[" + printTree(v.asContext()) + "]";
    case Value::Kind::Term: return "TERM[" + printTerm(v.asTerm()) + "]";
  }
  return "?";
}

std::string printTree(const LabelledTree& t) {
  std::string out;
  printTreeNode(t, t.root(), out);
  return out;
}

std::string printTerm(const Term& t) {
  std::set<std::string> scope;
  return TermPrinter().term(t, scope);
}

std::string printRule(const Rule& r, bool singleLine) {
  RulePrinter p(singleLine);
  std::set<std::string> scope;
  p.rule(r, scope, 0);
  return std::move(p).str();
}

std::string printSignature(const Signature& sig) {
  std::string out;
  for (const FunctionSymbol& f : sig.symbols()) {
    if (!out.empty()) out += ", ";
    out += f.name + "/" + std::to_string(f.arity);
    if (f.kind != SymbolKind::Dynamic) out += " " + std::string(to_string(f.kind));
  }
  return out;
}

std::string printLocation(const Location& loc) {
  if (loc.args.empty()) return loc.symbol;
  return loc.symbol + "(" + joinValues(loc.args) + ")";
}

std::string printUpdate(const UpdateItem& u) {
  if (const auto* p = std::get_if<Update>(&u)) {
    return printLocation(p->loc) + " := " + printValue(p->value);
  }
  const auto& s = std::get<SharedUpdate>(u);
  return printLocation(s.loc) + " <<= " + s.op + "(" + joinValues(s.args) + ")";
}

std::string printState(const State& s) {
  std::ostringstream out;
  if (!s.universe().empty()) out << "universe " << joinValues(s.universe()) << "\n";
  out << "signature " << printSignature(s.signature()) << "\n";
  out << "reserve '" << s.reserve().ns << " " << s.reserve().next << "\n";
  for (const auto& [loc, v] : s.bindings()) {
    out << printLocation(loc) << " = " << printValue(v) << "\n";
  }
  return out.str();
}

std::string printProgram(const ProgramDocument& p) {
  return "signature " + printSignature(p.signature) + "\nrule\n" + printRule(p.rule);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace rasm
