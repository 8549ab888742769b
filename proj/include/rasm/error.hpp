// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rasm {

enum class ErrorCode {
  UnknownNode,
  NotAnAncestor,
  XiLabelForbidden,
  TrivialContextNotExtendable,
  EmptyHedgeAtRoot,
  NotATree,
  NotAContext,
  UnboundVariable,
  ArityMismatch,
  UnknownSymbol,
  NonBooleanGuard,
  ConditionUndef,
  UnknownOperator,
  ImportBoundLocation,
  PartialBijection,
  MalformedEncoding,
  MalformedProgramTree,
  SignatureShrunk,
  SyntaxError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure the library reports carries one of the codes above; the
/// message is for humans and is not part of any stable format.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures additionally carry a 1-based position and what was expected there.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& expected, const std::string& found)
      : Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(column) +
                                          ": expected " + expected + ", found " + found),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace rasm
