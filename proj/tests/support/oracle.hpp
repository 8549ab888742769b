// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

// Sequential folds of shared updates, written directly from the operator
// definitions and independent of the operator registry.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "rasm/updates.hpp"

namespace rasm::testing {

inline std::optional<Value> referenceStep(const Value& current, const SharedUpdate& u) {
  if (u.op == "union") {
    std::vector<Value> items;
    if (current.isMultiset()) items = current.items();
    else if (!current.isUndef()) return std::nullopt;
    for (const Value& a : u.args) {
      if (!a.isMultiset()) return std::nullopt;
      items.insert(items.end(), a.items().begin(), a.items().end());
    }
    return Value::multiset(items);
  }
  if (u.args.empty()) return std::nullopt;
  std::uint64_t acc = 0;
  bool have = false;
  if (current.isNat()) {
    acc = current.asNat();
    have = true;
  } else if (!current.isUndef()) {
    return std::nullopt;
  }
  for (const Value& a : u.args) {
    if (!a.isNat()) return std::nullopt;
    const std::uint64_t x = a.asNat();
    if (!have) acc = x;
    else if (u.op == "add") acc += x;
    else if (u.op == "max") acc = std::max(acc, x);
    else if (u.op == "min") acc = std::min(acc, x);
    else return std::nullopt;
    have = true;
  }
  return Value::nat(acc);
}

inline std::optional<Value> referenceFold(const Value& current,
                                          const std::vector<SharedUpdate>& order) {
  std::optional<Value> v = current;
  for (const SharedUpdate& u : order) {
    v = referenceStep(*v, u);
    if (!v) return std::nullopt;
  }
  return v;
}

}  // namespace rasm::testing
