// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rasm/state.hpp"
#include "rasm/syntax.hpp"
#include "rasm/tree.hpp"
#include "rasm/updates.hpp"
#include "rasm/value.hpp"

namespace rasm {

// Canonical printing. Every printer output is accepted by the matching parser.

std::string printValue(const Value& v);
/// `label⟨child … child⟩`, valued leaves `label=⟨value⟩`, ξ as `^`.
std::string printTree(const LabelledTree& t);
/// Free variables are written `?x`; bound ones bare.
std::string printTerm(const Term& t);
/// Multi-line layout with two-space indentation; `singleLine` joins with spaces.
std::string printRule(const Rule& r, bool singleLine = false);
std::string printSignature(const Signature& sig);
std::string printLocation(const Location& loc);
std::string printUpdate(const UpdateItem& u);
std::string printState(const State& s);

// Parsing. Failures throw SyntaxError with a 1-based line and column.

Value parseValue(std::string_view text);
/// A tree, or a context when the text contains `^`.
Value parseTreeValue(std::string_view text);
Tree parseTree(std::string_view text);
Term parseTerm(std::string_view text);
Rule parseRule(std::string_view text);

/// A `.rst` document:
///
///   universe 'a, 'b
///   signature f/1, g/0 static
///   f('a) = 3
///   program { f('a) := f('a) + 1 }      (or: pgm = TREE[...])
///   reserve '$r 0
///
/// pgm/0 is always declared. With an inline program, pgm is bound to the
/// program tree over the declared signature.
State parseState(std::string_view text);

/// A `.rasm` document: `signature f/1, ...` followed by `rule <rule>`.
struct ProgramDocument {
  Signature signature;
  Rule rule = Rule::skip();
};
ProgramDocument parseProgram(std::string_view text);
std::string printProgram(const ProgramDocument& p);

/// FNV-1a, used for rule hashes in traces.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace rasm
