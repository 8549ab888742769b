// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rasm/reflection.hpp"
#include "rasm/state.hpp"

namespace rasm {

struct RunOptions {
  std::size_t steps = 1;
  /// Stop once a step leaves the state unchanged (or after maxSteps).
  bool fixpoint = false;
  std::size_t maxSteps = 10000;
  /// Inconsistent update sets abort the run instead of stuttering.
  bool strict = false;
};

struct RunResult {
  /// S0, S1, ..., including the initial state.
  std::vector<State> states;
  std::vector<StepReport> reports;
  bool reachedFixpoint = false;
  /// Set in strict mode when a step was inconsistent; the run stops there.
  bool aborted = false;
  std::string trace;
};

/// One trace block:
///
///   step <i>
///   rule-hash <16 hex digits of FNV-1a over the printed rule>
///   consistent true|false
///   update <location> := <value>     (one per collapsed update, sorted)
///   clash <location>                 (inconsistent steps only)
///   end
std::string formatTraceBlock(std::size_t index, const StepReport& report);

RunResult runMachine(const State& initial, const RunOptions& options);

/// Namespace of fresh reserve atoms for a seed: `$r` for 0, `$r<seed>_` otherwise.
std::string reserveNamespace(std::uint64_t seed);

}  // namespace rasm
