// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/run.hpp"

#include <cstdio>

#include "rasm/text.hpp"

namespace rasm {

std::string formatTraceBlock(std::size_t index, const StepReport& report) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(printRule(report.rule))));
  std::string out = "step " + std::to_string(index) + "\n";
  out += "rule-hash " + std::string(hash) + "\n";
  out += std::string("consistent ") + (report.consistent ? "true" : "false") + "\n";
  for (const auto& [loc, v] : report.updateSet.updates) {
    out += "update " + printLocation(loc) + " := " + printValue(v) + "\n";
  }
  for (const Location& loc : report.updateSet.clashes) {
    out += "clash " + printLocation(loc) + "\n";
  }
  out += "end\n";
  return out;
}

RunResult runMachine(const State& initial, const RunOptions& options) {
  RunResult r;
  r.states.push_back(initial);
  const std::size_t limit = options.fixpoint ? options.maxSteps : options.steps;
  for (std::size_t i = 1; i <= limit; ++i) {
    StepReport rep = step(r.states.back());
    r.trace += formatTraceBlock(i, rep);
    const bool unchanged = rep.next == r.states.back();
    const bool consistent = rep.consistent;
    r.states.push_back(rep.next);
    r.reports.push_back(std::move(rep));
    if (!consistent && options.strict) {
      r.aborted = true;
      return r;
    }
    if (options.fixpoint && unchanged) {
      r.reachedFixpoint = true;
      return r;
    }
  }
  return r;
}

std::string reserveNamespace(std::uint64_t seed) {
  return seed == 0 ? "$r" : "$r" + std::to_string(seed) + "_";
}

}  // namespace rasm
