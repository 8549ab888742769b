// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/error.hpp"

namespace rasm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownNode: return "unknown-node";
    case ErrorCode::NotAnAncestor: return "not-an-ancestor";
    case ErrorCode::XiLabelForbidden: return "xi-label-forbidden";
    case ErrorCode::TrivialContextNotExtendable: return "trivial-context-not-extendable";
    case ErrorCode::EmptyHedgeAtRoot: return "empty-hedge-at-root";
    case ErrorCode::NotATree: return "not-a-tree";
    case ErrorCode::NotAContext: return "not-a-context";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UnknownSymbol: return "unknown-symbol";
    case ErrorCode::NonBooleanGuard: return "non-boolean-guard";
    case ErrorCode::ConditionUndef: return "condition-undef";
    case ErrorCode::UnknownOperator: return "unknown-operator";
    case ErrorCode::ImportBoundLocation: return "import-bound-location";
    case ErrorCode::PartialBijection: return "partial-bijection";
    case ErrorCode::MalformedEncoding: return "malformed-encoding";
    case ErrorCode::MalformedProgramTree: return "malformed-program-tree";
    case ErrorCode::SignatureShrunk: return "signature-shrunk";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown-error";
}

}  // namespace rasm
