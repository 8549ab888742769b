// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rasm/value.hpp"

namespace rasm {

enum class SymbolKind : std::uint8_t { Dynamic, Static, Relational };

std::string_view to_string(SymbolKind kind) noexcept;

struct FunctionSymbol {
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::Dynamic;

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
  friend auto operator<=>(const FunctionSymbol&, const FunctionSymbol&) = default;
};

/// Finite set of function symbols with unique names.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<FunctionSymbol> symbols);

  /// Adds a symbol; re-adding the same name with another arity is an error.
  void add(const FunctionSymbol& f);
  const FunctionSymbol* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }

  /// Name/arity containment; symbol kinds are not compared.
  bool isSubsetOf(const Signature& other) const;
  Signature unionWith(const Signature& other) const;

  /// Symbols ordered by name.
  std::vector<FunctionSymbol> symbols() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, FunctionSymbol> symbols_;
};

/// (f, (a1, ..., an))
struct Location {
  std::string symbol;
  std::vector<Value> args;

  friend bool operator==(const Location&, const Location&) = default;
  friend std::strong_ordering operator<=>(const Location& a, const Location& b);
};

/// Deterministic source of fresh reserve atoms: `<ns>0`, `<ns>1`, ...
struct ReserveCursor {
  std::string ns = "$r";
  std::uint64_t next = 0;

  friend bool operator==(const ReserveCursor&, const ReserveCursor&) = default;
};

/// A first-order structure: signature, finite interpretation (absent = undef),
/// the declared universe atoms and the reserve cursor.
class State {
 public:
  State() = default;
  explicit State(Signature sig) : signature_(std::move(sig)) {}

  const Signature& signature() const noexcept { return signature_; }
  void setSignature(Signature sig) { signature_ = std::move(sig); }

  /// val_S(ℓ); undef where nothing is stored.
  const Value& get(const Location& loc) const;
  /// Stores v at ℓ; storing undef removes the binding. Arity is checked.
  void set(const Location& loc, Value v);
  const std::map<Location, Value>& bindings() const noexcept { return interp_; }

  const std::vector<Value>& universe() const noexcept { return universe_; }
  void addUniverseAtom(Value atom);

  const ReserveCursor& reserve() const noexcept { return reserve_; }
  ReserveCursor& reserve() noexcept { return reserve_; }

  /// Convenience lookup of a nullary location.
  const Value& get(const std::string& nullary) const { return get(Location{nullary, {}}); }

  friend bool operator==(const State&, const State&) = default;

 private:
  Signature signature_;
  std::map<Location, Value> interp_;
  std::vector<Value> universe_;
  ReserveCursor reserve_;
};

/// All values occurring in the interpretation (arguments and results, recursively
/// through tuples, multisets and tree leaves) plus the declared universe atoms.
/// Sorted, without duplicates, never containing undef.
std::vector<Value> activeDomain(const State& s);

/// Node sublocation: the node at `path` inside the tree stored at `base`.
struct SubLocation {
  Location base;
  std::vector<std::uint32_t> path;
};

/// Decidable fragment of location subsumption: ℓ2 ⊑ ℓ1 holds for identical
/// locations and for node sublocations of a tree-valued root location.
bool subsumes(const SubLocation& l1, const SubLocation& l2, const State& s);
/// ℓ1 depends on ℓ2: the converse direction of subsumption on the same fragment.
bool dependsOn(const SubLocation& l1, const SubLocation& l2, const State& s);

/// Applies an atom renaming to every location and value of the state, including
/// literals inside dropped terms and tree labels that spell a renamed atom.
/// Throws PartialBijection if π is not injective or misses an atom of s.
using AtomRenaming = std::map<std::string, std::string>;
State renameState(const State& s, const AtomRenaming& pi);
Value renameValue(const Value& v, const AtomRenaming& pi);

/// Atom names occurring anywhere in the state (including inside dropped terms).
std::vector<std::string> atomsOf(const State& s);

}  // namespace rasm
