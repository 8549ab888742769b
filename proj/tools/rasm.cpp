// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

// Batch driver: run, diff, check and fmt.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rasm/conformance.hpp"
#include "rasm/error.hpp"
#include "rasm/reflection.hpp"
#include "rasm/run.hpp"
#include "rasm/text.hpp"
#include "rasm/tree_diff.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitViolation = 4;
constexpr int kExitShrunk = 5;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rasm::Error(rasm::ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rasm::Error(rasm::ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

bool endsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A program tree from either a `.rasm` program document or tree text.
rasm::Tree loadProgramTree(const std::string& path) {
  const std::string text = readFile(path);
  if (endsWith(path, ".rasm")) {
    rasm::ProgramDocument d = rasm::parseProgram(text);
    return rasm::dropProgram(d.signature, d.rule);
  }
  if (endsWith(path, ".rst")) {
    const rasm::Value& v = rasm::parseState(text).get(std::string(rasm::kPgm));
    if (!v.isTree()) throw rasm::Error(rasm::ErrorCode::MalformedProgramTree, path + " has no pgm");
    return v.asTree();
  }
  return rasm::parseTree(text);
}

struct RunArgs {
  std::string state;
  std::string steps = "1";
  std::size_t maxSteps = 10000;
  std::string trace;
  bool checkPostulates = false;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  bool strict = false;
  std::size_t trials = 100;
};

rasm::State loadState(const RunArgs& a) {
  rasm::State s = rasm::parseState(readFile(a.state));
  if (a.seedGiven) s.reserve() = rasm::ReserveCursor{rasm::reserveNamespace(a.seed), 0};
  return s;
}

rasm::RunOptions runOptions(const RunArgs& a) {
  rasm::RunOptions o;
  o.maxSteps = a.maxSteps;
  o.strict = a.strict;
  if (a.steps == "fixpoint") {
    o.fixpoint = true;
  } else {
    try {
      std::size_t used = 0;
      o.steps = std::stoull(a.steps, &used);
      if (used != a.steps.size()) throw std::invalid_argument(a.steps);
    } catch (const std::exception&) {
      throw rasm::Error(rasm::ErrorCode::InvalidArgument, "--steps expects N or fixpoint");
    }
  }
  return o;
}

std::vector<rasm::CheckReport> postulateReports(const std::vector<rasm::State>& run,
                                                const std::vector<rasm::State>& inits,
                                                std::size_t trials, std::uint64_t seed) {
  std::vector<rasm::CheckReport> out;
  rasm::CheckReport iso;
  iso.name = "isomorphism-closure";
  for (const rasm::State& s : run) {
    rasm::CheckReport r = rasm::checkIsomorphismClosure(s, trials, seed);
    iso.instances += r.instances;
    iso.violations.insert(iso.violations.end(), r.violations.begin(), r.violations.end());
  }
  out.push_back(std::move(iso));
  out.push_back(rasm::checkSignatureMonotonicity(run));
  out.push_back(rasm::checkInitialAgreement(inits));
  rasm::CheckReport bounded;
  bounded.name = "bounded-exploration";
  for (std::size_t i = 0; i < inits.size(); ++i) {
    for (std::size_t j = i; j < inits.size(); ++j) {
      rasm::CheckReport r = rasm::checkBoundedExploration(inits[i], inits[j]);
      bounded.instances += r.instances;
      bounded.violations.insert(bounded.violations.end(), r.violations.begin(),
                                r.violations.end());
      bounded.notes.insert(bounded.notes.end(), r.notes.begin(), r.notes.end());
    }
  }
  out.push_back(std::move(bounded));
  return out;
}

int runCommand(const RunArgs& a) {
  const rasm::State init = loadState(a);
  rasm::RunResult r = rasm::runMachine(init, runOptions(a));
  if (!a.trace.empty()) writeFile(a.trace, r.trace);
  std::cout << rasm::printState(r.states.back());
  if (r.aborted) {
    std::cerr << "inconsistent update set at step " << r.reports.size() << "\n";
    return kExitOther;
  }
  if (a.checkPostulates) {
    bool ok = true;
    for (const rasm::CheckReport& rep : postulateReports(r.states, {init}, a.trials, a.seed)) {
      std::cerr << rasm::formatReport(rep);
      ok = ok && rep.passed();
    }
    if (!ok) return kExitViolation;
  }
  return kExitOk;
}

int diffCommand(const std::string& pathA, const std::string& pathB) {
  const rasm::Tree a = loadProgramTree(pathA);
  const rasm::Tree b = loadProgramTree(pathB);
  const rasm::AlgebraTerm theta = rasm::treeDiffTheta(a, b);
  const bool equal = rasm::evaluateAlgebraTerm(theta, a) == b;
  std::cout << "theta " << rasm::printAlgebraTerm(theta) << "\n";
  std::cout << "verdict " << (equal ? "equal" : "different") << "\n";
  return equal ? kExitOk : kExitOther;
}

int checkCommand(const std::vector<std::string>& paths, const RunArgs& a,
                 const std::string& reportPath) {
  std::vector<rasm::State> inits;
  for (const std::string& p : paths) {
    RunArgs one = a;
    one.state = p;
    inits.push_back(loadState(one));
  }
  rasm::RunResult r = rasm::runMachine(inits.front(), runOptions(a));
  std::string report;
  bool ok = true;
  for (const rasm::CheckReport& rep : postulateReports(r.states, inits, a.trials, a.seed)) {
    report += rasm::formatReport(rep);
    std::cout << rep.name << ": " << (rep.passed() ? "pass" : "FAIL") << " (" << rep.instances
              << " instances, " << rep.violations.size() << " violations)\n";
    ok = ok && rep.passed();
  }
  if (!reportPath.empty()) writeFile(reportPath, report);
  return ok ? kExitOk : kExitViolation;
}

int fmtCommand(const std::string& path) {
  const std::string text = readFile(path);
  if (endsWith(path, ".rst")) {
    std::cout << rasm::printState(rasm::parseState(text));
  } else if (endsWith(path, ".rasm")) {
    std::cout << rasm::printProgram(rasm::parseProgram(text));
  } else {
    std::cout << rasm::printTree(rasm::parseTree(text)) << "\n";
  }
  return kExitOk;
}

int exitCodeFor(const rasm::Error& e) {
  switch (e.code()) {
    case rasm::ErrorCode::SyntaxError: return kExitParse;
    case rasm::ErrorCode::MalformedProgramTree:
    case rasm::ErrorCode::MalformedEncoding: return kExitMalformed;
    case rasm::ErrorCode::SignatureShrunk: return kExitShrunk;
    default: return kExitOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime for reflective parallel abstract state machines"};
  app.require_subcommand(1);

  RunArgs args;
  auto addRunFlags = [&](CLI::App* cmd) {
    cmd->add_option("--steps", args.steps, "Number of steps, or 'fixpoint'")
        ->check(CLI::Validator(
            [](std::string& v) -> std::string {
              if (v == "fixpoint" || (!v.empty() && v.find_first_not_of("0123456789") ==
                                                        std::string::npos)) {
                return {};
              }
              return "expected N or fixpoint, found " + v;
            },
            "N|fixpoint"));
    cmd->add_option("--max-steps", args.maxSteps, "Step bound for --steps fixpoint")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "Reserve namespace and bijection seed")
        ->each([&](const std::string&) { args.seedGiven = true; });
    cmd->add_flag("--strict", args.strict, "Treat inconsistent update sets as fatal");
    cmd->add_option("--trials", args.trials, "Random bijections per state");
  };

  CLI::App* run = app.add_subcommand("run", "Run a state document");
  run->add_option("state", args.state, "State document (.rst)")->required();
  addRunFlags(run);
  run->add_option("--trace", args.trace, "Write the step trace to this file");
  run->add_flag("--check-postulates", args.checkPostulates, "Check postulates along the run");

  std::string diffA;
  std::string diffB;
  CLI::App* diff = app.add_subcommand("diff", "Tree algebra term turning one program into another");
  diff->add_option("from", diffA, "Source program (.rasm, .rst or tree text)")->required();
  diff->add_option("to", diffB, "Target program")->required();

  std::vector<std::string> checkPaths;
  std::string reportPath;
  CLI::App* check = app.add_subcommand("check", "Postulate checks on initial states and a run");
  check->add_option("states", checkPaths, "Initial state documents")->required();
  addRunFlags(check);
  check->add_option("--report", reportPath, "Write the canonical report to this file");

  std::string fmtPath;
  CLI::App* fmt = app.add_subcommand("fmt", "Print a document in canonical form");
  fmt->add_option("file", fmtPath, "State, program or tree file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*run) return runCommand(args);
    if (*diff) return diffCommand(diffA, diffB);
    if (*check) {
      if (args.steps == "1" && check->count("--steps") == 0) args.steps = "10";
      return checkCommand(checkPaths, args, reportPath);
    }
    if (*fmt) return fmtCommand(fmtPath);
  } catch (const rasm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
  return kExitOther;
}
