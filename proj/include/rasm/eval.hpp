// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rasm/state.hpp"
#include "rasm/syntax.hpp"
#include "rasm/updates.hpp"
#include "rasm/value.hpp"

namespace rasm {

/// Variable assignment ζ.
using Env = std::map<std::string, Value>;

/// Names accepted in Op terms.
const std::vector<std::string>& backgroundOps();
bool isBackgroundOp(const std::string& name);

/// Applies a background operator to evaluated arguments. Operators are
/// partial: arguments outside their domain give undef. A wrong argument
/// count throws ArityMismatch; an unknown name throws UnknownOperator.
Value applyBackgroundOp(const std::string& name, const std::vector<Value>& args);

/// Evaluates terms and rules in one fixed state. The active domain is
/// computed once; reserve atoms are drawn from a private copy of the cursor.
class Evaluator {
 public:
  explicit Evaluator(const State& s, const OperatorRegistry& ops = OperatorRegistry::standard());
  /// Evaluates over `sig` instead of the state's own signature.
  Evaluator(const State& s, Signature sig,
            const OperatorRegistry& ops = OperatorRegistry::standard());

  Value term(const Env& env, const Term& t);
  Value comprehension(const Env& env, const Term& mc);
  UpdateMultiset rule(const Env& env, const Rule& r);

  const std::vector<Value>& domain();
  /// Cursor after every import performed so far.
  const ReserveCursor& cursor() const noexcept { return cursor_; }
  const std::set<std::string>& importedAtoms() const noexcept { return imported_; }

 private:
  Value freshAtom();
  void checkLocation(const Location& loc) const;
  template <typename F>
  void forEachAssignment(const Env& env, const std::vector<std::string>& binders, F&& f);

  const State& state_;
  Signature signature_;
  const OperatorRegistry& ops_;
  std::optional<std::vector<Value>> domain_;
  std::optional<std::set<std::string>> taken_;
  ReserveCursor cursor_;
  std::set<std::string> imported_;
};

Value evalTerm(const State& s, const Env& env, const Term& t);
Value evalComprehension(const State& s, const Env& env, const Term& mc);
/// Δ̈_{r,ζ}(S). When `cursor` is given it is advanced past the imported atoms.
UpdateMultiset evalRule(const State& s, const Env& env, const Rule& r,
                        ReserveCursor* cursor = nullptr,
                        const OperatorRegistry& ops = OperatorRegistry::standard());

}  // namespace rasm
