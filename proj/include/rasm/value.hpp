// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace rasm {

class Tree;
class Context;
class Term;

namespace detail {
struct TreeRep;
struct TermNode;
}  // namespace detail

/// An element of the universe.
///
/// Values are immutable and cheap to copy: compound alternatives share their
/// payload. Equality and ordering are structural; multisets are kept sorted,
/// so two multisets compare equal iff they hold the same elements with the
/// same multiplicities.
class Value {
 public:
  enum class Kind : std::uint8_t { Undef, Bool, Nat, Atom, Tuple, Multiset, Tree, Context, Term };

  Value() = default;

  static Value undef() { return Value(); }
  static Value boolean(bool b);
  static Value nat(std::uint64_t n);
  static Value atom(std::string name);
  static Value tuple(std::vector<Value> items);
  static Value multiset(std::vector<Value> items);
  static Value tree(const Tree& t);
  static Value context(const Context& c);
  static Value term(const Term& t);

  Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }
  bool isUndef() const noexcept { return kind() == Kind::Undef; }
  bool isBool() const noexcept { return kind() == Kind::Bool; }
  bool isNat() const noexcept { return kind() == Kind::Nat; }
  bool isAtom() const noexcept { return kind() == Kind::Atom; }
  bool isTuple() const noexcept { return kind() == Kind::Tuple; }
  bool isMultiset() const noexcept { return kind() == Kind::Multiset; }
  bool isTree() const noexcept { return kind() == Kind::Tree; }
  bool isContext() const noexcept { return kind() == Kind::Context; }
  bool isTerm() const noexcept { return kind() == Kind::Term; }
  bool isTrue() const noexcept { return isBool() && std::get<bool>(v_); }
  bool isFalse() const noexcept { return isBool() && !std::get<bool>(v_); }

  // Accessors throw Error(InvalidArgument) on a kind mismatch.
  bool asBool() const;
  std::uint64_t asNat() const;
  const std::string& atomName() const;
  /// Elements of a tuple (in order) or a multiset (sorted).
  const std::vector<Value>& items() const;
  Tree asTree() const;
  Context asContext() const;
  Term asTerm() const;

  std::size_t hash() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct AtomBox {
    std::string name;
  };
  struct SeqBox {
    std::shared_ptr<const std::vector<Value>> items;
  };
  struct MultisetBox {
    std::shared_ptr<const std::vector<Value>> items;
  };
  struct TreeBox {
    std::shared_ptr<const detail::TreeRep> rep;
  };
  struct ContextBox {
    std::shared_ptr<const detail::TreeRep> rep;
  };
  struct TermBox {
    std::shared_ptr<const detail::TermNode> node;
  };

  std::variant<std::monostate, bool, std::uint64_t, AtomBox, SeqBox, MultisetBox, TreeBox,
               ContextBox, TermBox>
      v_;
};

std::string_view to_string(Value::Kind kind) noexcept;

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

/// Hash mixing shared by every structural hash in the library.
inline std::size_t hashCombine(std::size_t seed, std::size_t h) noexcept {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace rasm
