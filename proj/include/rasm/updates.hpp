// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rasm/state.hpp"
#include "rasm/value.hpp"

namespace rasm {

/// (ℓ, v)
struct Update {
  Location loc;
  Value value;

  friend bool operator==(const Update&, const Update&) = default;
  friend std::strong_ordering operator<=>(const Update& a, const Update& b);
};

/// (ℓ, op, (v1, ..., vm)): a contribution merged with the others on ℓ at collapse time.
struct SharedUpdate {
  Location loc;
  std::string op;
  std::vector<Value> args;

  friend bool operator==(const SharedUpdate&, const SharedUpdate&) = default;
  friend std::strong_ordering operator<=>(const SharedUpdate& a, const SharedUpdate& b);
};

using UpdateItem = std::variant<Update, SharedUpdate>;

const Location& locationOf(const UpdateItem& item);

/// Multiset of ordinary and shared updates. Insertion order is kept for
/// display; equality ignores it.
class UpdateMultiset {
 public:
  UpdateMultiset() = default;

  void add(UpdateItem item) { items_.push_back(std::move(item)); }
  void add(const UpdateMultiset& other);
  const std::vector<UpdateItem>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  /// Items in canonical (sorted) order.
  std::vector<UpdateItem> sorted() const;

  friend bool operator==(const UpdateMultiset& a, const UpdateMultiset& b);

 private:
  std::vector<UpdateItem> items_;
};

/// A collapsed update set. When inconsistent, `clashes` lists the offending
/// locations and `updates` holds only the groups that did collapse.
struct UpdateSet {
  std::map<Location, Value> updates;
  bool consistent = true;
  std::vector<Location> clashes;

  friend bool operator==(const UpdateSet&, const UpdateSet&) = default;
};

/// How the runtime decides order independence for groups larger than the
/// brute-force bound.
enum class CommutationClass : std::uint8_t {
  Always,    // any two applications commute
  Pairwise,  // commute iff the registered predicate holds for every pair
  Never,     // no guarantee; large groups are inconsistent
};

struct SharedOperator {
  std::string name;
  CommutationClass commutation = CommutationClass::Never;
  /// Folds one contribution into the current value; nullopt if it does not apply.
  std::function<std::optional<Value>(const Value& current, const std::vector<Value>& args)> apply;
  /// Pairwise commutation test on argument vectors (Pairwise class only).
  std::function<bool(const std::vector<Value>&, const std::vector<Value>&)> commutes;
  /// Pairwise operators of one non-empty family share `commutes` and may be mixed in a group.
  std::string family;
};

class OperatorRegistry {
 public:
  /// union, add, max, min, append, tree_replace, tree_append.
  static const OperatorRegistry& standard();

  void add(SharedOperator op);
  const SharedOperator* find(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, SharedOperator> ops_;
};

/// Groups up to this size are checked by folding every permutation.
inline constexpr std::size_t kBruteForceGroupLimit = 6;

/// Folds shared updates in the given order over `current`; nullopt if any step fails.
std::optional<Value> foldShared(const Value& current, const std::vector<SharedUpdate>& group,
                                const OperatorRegistry& ops);

/// Collapses the multiset against the values of s. Throws UnknownOperator for
/// shared updates naming an unregistered operator.
UpdateSet collapse(const State& s, const UpdateMultiset& um,
                   const OperatorRegistry& ops = OperatorRegistry::standard());

/// S + Δ, or s itself when Δ is inconsistent.
State applyUpdateSet(const State& s, const UpdateSet& u);

}  // namespace rasm
