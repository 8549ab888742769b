// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <set>

#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/reflection.hpp"
#include "rasm/text.hpp"

namespace rasm {

namespace {

enum class Tok { Ident, Nat, Atom, Var, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"IF",   "THEN", "ELSE", "ENDIF", "PAR",    "ENDPAR",
                                          "FORALL", "WITH", "DO",  "ENDDO", "LET",    "IN",
                                          "IMPORT", "true", "false", "undef", "and",  "or",
                                          "not",  "TERM", "RULE", "TREE",  "VAL"};
  return k;
}

bool identStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool identChar(char c) { return identStart(c) || std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view src) {
  static const char* const symbols[] = {"⟨", "⟩", "<<=", ":=", "!=", "<=", ">=", "{|", "|}",
                                        "(", ")", ",", "|", ":", "=", "<", ">", "+", "-", "*",
                                        "[", "]", "{", "}", "/", "^"};
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i + k]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line;
    const int cl = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (identStart(c)) {
      std::size_t j = i;
      while (j < src.size() && identChar(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if ((c == '\'' || c == '?') && i + 1 < src.size() && identChar(src[i + 1])) {
      std::size_t j = i + 1;
      while (j < src.size() && identChar(src[j])) ++j;
      out.push_back({c == '\'' ? Tok::Atom : Tok::Var, std::string(src.substr(i + 1, j - i - 1)),
                     l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* s : symbols) {
      std::string_view sv(s);
      if (src.substr(i, sv.size()) == sv) {
        out.push_back({Tok::Sym, std::string(sv), l, cl});
        advance(sv.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SyntaxError(l, cl, "a token", "'" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  // ---- generic helpers

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool isSym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool isWord(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool atEnd() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, expected, found);
  }

  void expectSym(const char* s) {
    if (!isSym(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }
  void expectWord(const char* s) {
    if (!isWord(s)) fail(s);
    ++pos_;
  }
  bool acceptSym(const char* s) {
    if (!isSym(s)) return false;
    ++pos_;
    return true;
  }
  bool acceptWord(const char* s) {
    if (!isWord(s)) return false;
    ++pos_;
    return true;
  }
  std::string name(const char* what = "an identifier") {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail(what);
    return toks_[pos_++].text;
  }
  std::uint64_t nat() {
    if (peek().kind != Tok::Nat) fail("a natural number");
    try {
      return std::stoull(toks_[pos_++].text);
    } catch (const std::out_of_range&) {
      --pos_;
      fail("a natural number below 2^64");
    }
  }
  void finish() {
    if (!atEnd()) fail("end of input");
  }

  // ---- values

  Value value() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Nat: return Value::nat(nat());
      case Tok::Atom: ++pos_; return Value::atom(t.text);
      case Tok::Ident:
        if (acceptWord("true")) return Value::boolean(true);
        if (acceptWord("false")) return Value::boolean(false);
        if (acceptWord("undef")) return Value::undef();
        if (isWord("TERM") || isWord("RULE") || isWord("TREE")) return quote();
        break;
      case Tok::Sym:
        if (acceptSym("(")) {
          std::vector<Value> items;
          bool trailingComma = false;
          while (!isSym(")")) {
            items.push_back(value());
            trailingComma = acceptSym(",");
            if (!trailingComma) break;
          }
          expectSym(")");
          (void)trailingComma;
          return Value::tuple(std::move(items));
        }
        if (acceptSym("{|")) {
          std::vector<Value> items;
          while (!isSym("|}")) {
            items.push_back(value());
            if (!acceptSym(",")) break;
          }
          expectSym("|}");
          return Value::multiset(std::move(items));
        }
        break;
      default: break;
    }
    fail("a value");
  }

  // TERM[...] / RULE[...] / TREE[...]
  Value quote() {
    const std::string kw = toks_[pos_++].text;
    expectSym("[");
    Value v;
    if (kw == "TERM") {
      std::vector<std::string> saved;
      saved.swap(scope_);
      v = Value::term(term());
      saved.swap(scope_);
    } else if (kw == "RULE") {
      std::vector<std::string> saved;
      saved.swap(scope_);
      v = Value::tree(dropRule(rule()));
      saved.swap(scope_);
    } else if (kw == "TREE") {
      v = treeValue();
    } else {
      v = value();
    }
    expectSym("]");
    return v;
  }

  // ---- trees

  Value treeValue() {
    const Token& start = peek();
    TreeBuilder b;
    treeNode(b, TreeBuilder::kNoParent);
    try {
      auto rep = b.finish();
      if (rep->xiCount == 0) return Value::tree(Tree::fromRep(rep));
      return Value::context(Context::fromRep(rep));
    } catch (const Error& e) {
      throw SyntaxError(start.line, start.column, "a tree or a context", e.what());
    }
  }

  void treeNode(TreeBuilder& b, std::uint32_t parent) {
    if (acceptSym("^")) {
      b.add(Label::xi(), std::nullopt, parent);
      return;
    }
    if (peek().kind != Tok::Ident) fail("a tree label");
    Label label(toks_[pos_++].text);
    if (isSym("=") && isSym("⟨", 1)) {
      pos_ += 2;
      Value v = value();
      expectSym("⟩");
      b.add(label, std::move(v), parent);
      return;
    }
    std::uint32_t id = b.add(label, std::nullopt, parent);
    if (acceptSym("⟨")) {
      while (!acceptSym("⟩")) treeNode(b, id);
    }
  }

  // ---- terms

  Term term() { return orTerm(); }

  Term orTerm() { return chain("or", &Parser::andTerm); }
  Term andTerm() { return chain("and", &Parser::notTerm); }

  Term chain(const char* word, Term (Parser::*next)()) {
    std::vector<Term> parts{(this->*next)()};
    while (acceptWord(word)) parts.push_back((this->*next)());
    if (parts.size() == 1) return parts[0];
    return Term::op(word, std::move(parts));
  }

  Term notTerm() {
    if (acceptWord("not")) return Term::op("not", {notTerm()});
    return cmpTerm();
  }

  Term cmpTerm() {
    Term lhs = addTerm();
    for (const char* op : {"=", "!=", "<=", ">=", "<", ">"}) {
      if (acceptSym(op)) return Term::op(op, {lhs, addTerm()});
    }
    return lhs;
  }

  Term addTerm() {
    Term lhs = mulTerm();
    for (;;) {
      if (acceptSym("+")) lhs = Term::op("+", {lhs, mulTerm()});
      else if (acceptSym("-")) lhs = Term::op("-", {lhs, mulTerm()});
      else return lhs;
    }
  }

  Term mulTerm() {
    Term lhs = primary();
    while (acceptSym("*")) lhs = Term::op("*", {lhs, primary()});
    return lhs;
  }

  std::vector<Term> termList(const char* close) {
    std::vector<Term> out;
    if (isSym(close)) return out;
    out.push_back(term());
    while (acceptSym(",")) out.push_back(term());
    return out;
  }

  bool inScope(const std::string& n) const {
    return std::find(scope_.begin(), scope_.end(), n) != scope_.end();
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Nat: return Term::literal(Value::nat(nat()));
      case Tok::Atom: ++pos_; return Term::literal(Value::atom(t.text));
      case Tok::Var: ++pos_; return Term::var(t.text);
      case Tok::Ident: {
        if (acceptWord("true")) return Term::literal(Value::boolean(true));
        if (acceptWord("false")) return Term::literal(Value::boolean(false));
        if (acceptWord("undef")) return Term::literal(Value::undef());
        if (isWord("TERM") || isWord("RULE") || isWord("TREE") || isWord("VAL")) {
          if (!isSym("[", 1)) fail("'['");
          return Term::literal(quote());
        }
        std::string n = name("a term");
        if (acceptSym("(")) {
          std::vector<Term> args = termList(")");
          expectSym(")");
          if (isBackgroundOp(n)) return Term::op(n, std::move(args));
          return Term::apply(n, std::move(args));
        }
        if (inScope(n)) return Term::var(n);
        return Term::apply(n);
      }
      case Tok::Sym:
        if (acceptSym("(")) {
          if (acceptSym(")")) return Term::op("tuple", {});
          Term first = term();
          if (acceptSym(")")) return first;
          expectSym(",");
          std::vector<Term> items{first};
          if (!isSym(")")) {
            items.push_back(term());
            while (acceptSym(",")) items.push_back(term());
          }
          expectSym(")");
          return Term::op("tuple", std::move(items));
        }
        if (acceptSym("{|")) return braces();
        break;
      default: break;
    }
    fail("a term");
  }

  // After `{|`: a multiset literal or a comprehension.
  Term braces() {
    if (acceptSym("|}")) return Term::op("multiset", {});
    const std::size_t headStart = pos_;
    Term head = term();
    if (acceptSym("|")) {
      std::vector<std::string> binders;
      if (!isSym(":")) {
        binders.push_back(name("a binder"));
        while (acceptSym(",")) binders.push_back(name("a binder"));
      }
      expectSym(":");
      const std::size_t guardStart = pos_;
      // Re-read the head with the binders in scope.
      const std::size_t mark = scope_.size();
      scope_.insert(scope_.end(), binders.begin(), binders.end());
      pos_ = headStart;
      head = term();
      pos_ = guardStart;
      Term guard = term();
      scope_.resize(mark);
      expectSym("|}");
      return Term::comprehension(std::move(head), std::move(binders), std::move(guard));
    }
    std::vector<Term> items{head};
    while (acceptSym(",")) items.push_back(term());
    expectSym("|}");
    return Term::op("multiset", std::move(items));
  }

  // ---- rules

  Rule rule() {
    if (acceptWord("IF")) {
      Term c = term();
      expectWord("THEN");
      Rule a = rule();
      Rule b = Rule::skip();
      if (acceptWord("ELSE")) b = rule();
      expectWord("ENDIF");
      return Rule::ifThenElse(std::move(c), std::move(a), std::move(b));
    }
    if (acceptWord("PAR")) {
      std::vector<Rule> rules;
      while (!acceptWord("ENDPAR")) {
        if (atEnd()) fail("ENDPAR");
        rules.push_back(rule());
      }
      return Rule::par(std::move(rules));
    }
    if (acceptWord("FORALL")) {
      std::string x = name("a variable");
      expectWord("WITH");
      scope_.push_back(x);
      Term g = term();
      expectWord("DO");
      Rule body = rule();
      expectWord("ENDDO");
      scope_.pop_back();
      return Rule::forall(std::move(x), std::move(g), std::move(body));
    }
    if (acceptWord("LET")) {
      std::string x = name("a variable");
      expectSym("=");
      Term t = term();
      expectWord("IN");
      scope_.push_back(x);
      Rule body = rule();
      scope_.pop_back();
      return Rule::let(std::move(x), std::move(t), std::move(body));
    }
    if (acceptWord("IMPORT")) {
      std::string x = name("a variable");
      expectWord("DO");
      scope_.push_back(x);
      Rule body = rule();
      scope_.pop_back();
      return Rule::import(std::move(x), std::move(body));
    }
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail("a rule");
    std::string f = name("a function symbol");
    std::vector<Term> args;
    if (acceptSym("(")) {
      args = termList(")");
      expectSym(")");
    }
    if (acceptSym(":=")) return Rule::assign(std::move(f), std::move(args), term());
    if (acceptSym("<<=")) {
      std::string op = name("a shared operator");
      expectSym("(");
      std::vector<Term> operands = termList(")");
      expectSym(")");
      return Rule::partial(std::move(f), std::move(args), std::move(op), std::move(operands));
    }
    fail("':=' or '<<='");
  }

  // ---- documents

  FunctionSymbol symbolDecl() {
    FunctionSymbol f;
    f.name = name("a function symbol");
    expectSym("/");
    const std::uint64_t a = nat();
    if (a > UINT32_MAX) fail("a smaller arity");
    f.arity = static_cast<std::uint32_t>(a);
    if (acceptWord("static")) f.kind = SymbolKind::Static;
    else if (acceptWord("relational")) f.kind = SymbolKind::Relational;
    else acceptWord("dynamic");
    return f;
  }

  Signature signatureDecl() {
    Signature sig;
    auto addChecked = [&](const FunctionSymbol& f, const Token& at) {
      try {
        sig.add(f);
      } catch (const Error& e) {
        throw SyntaxError(at.line, at.column, "a consistent signature", e.what());
      }
    };
    if (peek().kind != Tok::Ident) return sig;
    Token at = peek();
    addChecked(symbolDecl(), at);
    while (acceptSym(",")) {
      at = peek();
      addChecked(symbolDecl(), at);
    }
    return sig;
  }

  State stateDocument() {
    Signature sig;
    std::vector<Value> universe;
    std::vector<std::pair<Token, Location>> locs;
    std::vector<Value> vals;
    std::optional<Rule> program;
    ReserveCursor reserve;
    while (!atEnd()) {
      if (acceptWord("universe")) {
        universe.push_back(value());
        while (acceptSym(",")) universe.push_back(value());
        continue;
      }
      if (acceptWord("signature")) {
        for (const FunctionSymbol& f : signatureDecl().symbols()) {
          if (sig.find(f.name)) fail("no duplicate declaration of " + f.name);
          sig.add(f);
        }
        continue;
      }
      if (acceptWord("reserve")) {
        if (peek().kind != Tok::Atom) fail("a reserve namespace atom");
        reserve.ns = toks_[pos_++].text;
        reserve.next = nat();
        continue;
      }
      if (acceptWord("program")) {
        if (program) fail("a single program");
        expectSym("{");
        program = rule();
        expectSym("}");
        continue;
      }
      const Token at = peek();
      Location loc{name("a declaration or binding"), {}};
      if (acceptSym("(")) {
        if (!isSym(")")) {
          loc.args.push_back(value());
          while (acceptSym(",")) loc.args.push_back(value());
        }
        expectSym(")");
      }
      expectSym("=");
      vals.push_back(value());
      locs.emplace_back(at, std::move(loc));
    }

    if (!sig.find(std::string(kPgm))) sig.add({std::string(kPgm), 0, SymbolKind::Dynamic});
    State s(sig);
    s.reserve() = reserve;
    for (const Value& a : universe) {
      if (!a.isAtom()) throw SyntaxError(1, 1, "atoms in the universe", printValue(a));
      s.addUniverseAtom(a);
    }
    bool pgmBound = false;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      const auto& [at, loc] = locs[i];
      const FunctionSymbol* f = sig.find(loc.symbol);
      if (!f) throw SyntaxError(at.line, at.column, "a declared symbol", loc.symbol);
      if (f->arity != loc.args.size()) {
        throw SyntaxError(at.line, at.column,
                          std::to_string(f->arity) + " arguments for " + loc.symbol,
                          std::to_string(loc.args.size()));
      }
      if (!s.get(loc).isUndef()) {
        throw SyntaxError(at.line, at.column, "a single binding per location", loc.symbol);
      }
      if (loc.symbol == kPgm) pgmBound = true;
      s.set(loc, vals[i]);
    }
    if (program) {
      if (pgmBound) throw SyntaxError(1, 1, "either a program block or a pgm binding", "both");
      s.set(Location{std::string(kPgm), {}}, Value::tree(dropProgram(sig, *program)));
    }
    return s;
  }

  ProgramDocument programDocument() {
    ProgramDocument doc;
    if (acceptWord("signature")) doc.signature = signatureDecl();
    if (!doc.signature.find(std::string(kPgm))) {
      doc.signature.add({std::string(kPgm), 0, SymbolKind::Dynamic});
    }
    expectWord("rule");
    doc.rule = rule();
    return doc;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Value parseValue(std::string_view text) {
  Parser p(text);
  Value v = p.value();
  p.finish();
  return v;
}

Value parseTreeValue(std::string_view text) {
  Parser p(text);
  Value v = p.treeValue();
  p.finish();
  return v;
}

Tree parseTree(std::string_view text) {
  Value v = parseTreeValue(text);
  if (!v.isTree()) throw SyntaxError(1, 1, "a tree without ^", "a context");
  return v.asTree();
}

Term parseTerm(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

Rule parseRule(std::string_view text) {
  Parser p(text);
  Rule r = p.rule();
  p.finish();
  return r;
}

State parseState(std::string_view text) {
  Parser p(text);
  return p.stateDocument();
}

ProgramDocument parseProgram(std::string_view text) {
  Parser p(text);
  ProgramDocument d = p.programDocument();
  p.finish();
  return d;
}

}  // namespace rasm
