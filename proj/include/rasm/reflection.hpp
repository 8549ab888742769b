// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rasm/state.hpp"
#include "rasm/syntax.hpp"
#include "rasm/tree.hpp"
#include "rasm/updates.hpp"

namespace rasm {

/// The reserved labels L of program trees.
const std::vector<std::string>& programLabels();
bool isProgramLabel(std::string_view name);

/// Name of the distinguished nullary location holding the program tree.
inline constexpr std::string_view kPgm = "pgm";

// drop: syntax to values.
Value dropTerm(const Term& t);
Value dropSymbol(const FunctionSymbol& f);
Tree dropRule(const Rule& r);
Tree dropSignature(const Signature& sig);
/// pgm⟨signature⟨…⟩ rule⟨dropRule(r)⟩⟩
Tree dropProgram(const Signature& sig, const Rule& r);

// raise: values to syntax. Malformed input throws MalformedEncoding with the
// path of the offending node.
Term raiseTerm(const Value& v);
FunctionSymbol raiseSymbol(const Value& name, const Value& arity);
Rule raiseRule(const Tree& t);
Signature raiseSignature(const Tree& t);

/// The unique child of the root labelled `signature` / `rule`; throws
/// MalformedProgramTree on zero or several matches.
Tree extractSignatureSubtree(const Tree& pgm);
Tree extractRuleSubtree(const Tree& pgm);

struct Program {
  Signature signature;
  Rule rule;
};

/// Checks the ProgramTree shape and raises both parts. Any defect, including
/// a malformed encoding below, is reported as MalformedProgramTree.
Program raiseProgram(const Tree& pgm);

/// The extraction function on rule trees: a tuple of multiset comprehension
/// terms (let-binding terms are kept as they are).
std::vector<Term> beta(const Tree& ruleTree);
std::vector<Term> betaOfRule(const Rule& r);

/// Closes a β element over its free variables so that it can be evaluated
/// without an environment.
Term closeBetaTerm(const Term& t);

struct StepReport {
  State next;
  Rule rule = Rule::skip();
  Signature signature;
  UpdateMultiset multiset;
  UpdateSet updateSet;
  bool consistent = true;
};

/// τ(S) = S + Δ_{r_S}(S) with r_S raised from pgm. Throws MalformedProgramTree
/// when pgm (before or after the step) is not a well-formed program and
/// SignatureShrunk when a step would drop a symbol.
StepReport step(const State& s, const OperatorRegistry& ops = OperatorRegistry::standard());

}  // namespace rasm
