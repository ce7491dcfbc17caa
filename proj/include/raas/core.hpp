#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "raas/errors.hpp"

namespace raas {

using word_t = std::uint32_t;

#ifndef RAAS_MAX_ARITY
#define RAAS_MAX_ARITY 12
#endif

// Hard cap on the number of coordinates; keeps every explicit table and graph
// at desk scale.
inline constexpr int kMaxArity = RAAS_MAX_ARITY;

constexpr word_t full_mask(int arity) {
  return static_cast<word_t>((std::uint64_t{1} << arity) - 1);
}

namespace detail {
void require_arity(int arity);
void require_bits(word_t bits, int arity);
void require_same_arity(int left, int right);
}  // namespace detail

// A state μ ∈ Bⁿ. Coordinate 1 (coordinates are 1-based in all user-facing
// text) lives at bit 0, so `bits` is also the truth-table index of the state.
struct StateVector {
  word_t bits = 0;
  int arity = 1;

  StateVector() = default;
  StateVector(word_t bits_, int arity_);

  bool bit(int position) const { return (bits >> position) & 1u; }
  friend auto operator<=>(const StateVector&, const StateVector&) = default;
};

// Selects which coordinates compute one asynchronous step.
struct FireVector {
  word_t bits = 0;
  int arity = 1;

  FireVector() = default;
  FireVector(word_t bits_, int arity_);

  bool fires(int position) const { return (bits >> position) & 1u; }
  friend auto operator<=>(const FireVector&, const FireVector&) = default;
};

// A set of coordinate indices, one per bit.
struct CoordinateSet {
  word_t bits = 0;
  int arity = 1;

  CoordinateSet() = default;
  CoordinateSet(word_t bits_, int arity_);

  bool contains(int position) const { return (bits >> position) & 1u; }
  int size() const { return std::popcount(bits); }
  friend auto operator<=>(const CoordinateSet&, const CoordinateSet&) = default;
};

// Φ: Bⁿ → Bⁿ as an explicit table indexed by the packed state value.
class TransitionFunction {
 public:
  TransitionFunction(int arity, std::vector<word_t> table);

  static TransitionFunction constant(int arity, word_t value);
  static TransitionFunction identity(int arity);
  // Packs the table into one integer, the entry for state 0 least
  // significant; defined for 2ⁿ·n ≤ 64, i.e. n ≤ 4.
  static TransitionFunction from_index(int arity, std::uint64_t index);
  std::uint64_t to_index() const;

  int arity() const { return arity_; }
  word_t mask() const { return full_mask(arity_); }
  std::size_t size() const { return table_.size(); }
  const std::vector<word_t>& table() const { return table_; }

  word_t value(word_t mu) const { return table_[mu]; }
  // One asynchronous step: coordinates selected by `fire` take Φ's value, the
  // rest keep μ's.
  word_t step(word_t mu, word_t fire) const { return (mu & ~fire) | (table_[mu] & fire); }

  friend bool operator==(const TransitionFunction&, const TransitionFunction&) = default;

 private:
  int arity_;
  std::vector<word_t> table_;
};

// μ ↦ Φ(μ).
StateVector apply(const TransitionFunction& fn, StateVector mu);

// One step in which exactly the coordinates selected by `fire` compute Φ.
StateVector step(const TransitionFunction& fn, StateVector mu, FireVector fire);

// Left-to-right fold of `step`; the empty word is the identity.
StateVector apply_word(const TransitionFunction& fn, StateVector mu,
                       std::span<const FireVector> word);

std::optional<StateVector> constant_value(const TransitionFunction& fn);

std::vector<StateVector> fixed_points(const TransitionFunction& fn);

// Coordinates where Φ disagrees with the state; drawn underlined in
// state portraits.
CoordinateSet unstable_set(const TransitionFunction& fn, StateVector mu);

// "10" reads coordinate 1 leftmost.
std::string bit_string(word_t bits, int arity);

// Inverse of bit_string; returns (bits, arity).
std::pair<word_t, int> parse_bit_string(const std::string& text);

}  // namespace raas
