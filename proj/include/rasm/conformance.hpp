// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rasm/state.hpp"
#include "rasm/syntax.hpp"
#include "rasm/updates.hpp"

namespace rasm {

struct Violation {
  std::string description;
  std::string witness;
};

struct CheckReport {
  std::string name;
  std::size_t instances = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool passed() const noexcept { return violations.empty(); }
};

/// Canonical text: a `check <name> instances=<n> violations=<m>` header,
/// then `violation`, `witness` and `note` lines.
std::string formatReport(const CheckReport& r);

using StepFunction = std::function<State(const State&)>;

/// step(s).next
State defaultStep(const State& s);

/// Atoms a bijection may move: atoms of s that are not program labels,
/// function symbol names, operator names or reserve atoms (leading `$`).
std::vector<std::string> movableAtoms(const State& s);

/// Random bijection on the movable atoms of s onto the movable atoms plus as
/// many fresh `iso<k>` atoms; identity on every other atom of s.
AtomRenaming randomRenaming(const State& s, std::uint64_t seed);

/// step(π(S)) = π(step(S)) for `trials` random bijections. Atoms introduced
/// by the step itself are mapped to themselves.
CheckReport checkIsomorphismClosure(const State& s, std::size_t trials, std::uint64_t seed,
                                    const StepFunction& stepFn = defaultStep);

/// For states with the same pgm and the same value on every β element of its
/// rule, the update multisets coincide. Pairs failing the precondition are
/// recorded as notes, not violations.
CheckReport checkBoundedExploration(const State& s1, const State& s2);

/// Every state's signature contains its predecessor's.
CheckReport checkSignatureMonotonicity(const std::vector<State>& run);

/// All initial states carry the same pgm value.
CheckReport checkInitialAgreement(const std::vector<State>& inits);

/// Update sets from a direct, set-based evaluator: nullopt when inconsistent.
/// Supports the arithmetic, boolean, tuple and multiset operators and the
/// add, max, min, union and append shared operators.
std::optional<std::map<Location, Value>> naiveUpdateSet(const State& s, const Rule& r);

/// Δ_r(S) from the runtime against naiveUpdateSet. Errors agree when both
/// sides throw the same code.
CheckReport checkNaiveEquivalence(const State& s, const Rule& r);

}  // namespace rasm
