#include "raas/core.hpp"

#include <algorithm>

namespace raas {

namespace detail {

void require_arity(int arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw UsageError("arity " + std::to_string(arity) + " outside [1, " +
                     std::to_string(kMaxArity) + "]");
  }
}

void require_bits(word_t bits, int arity) {
  if (bits > full_mask(arity)) {
    throw UsageError("value " + std::to_string(bits) + " has bits above coordinate " +
                     std::to_string(arity));
  }
}

void require_same_arity(int left, int right) {
  if (left != right) {
    throw UsageError("arity mismatch: " + std::to_string(left) + " vs " + std::to_string(right));
  }
}

}  // namespace detail

StateVector::StateVector(word_t bits_, int arity_) : bits(bits_), arity(arity_) {
  detail::require_arity(arity_);
  detail::require_bits(bits_, arity_);
}

FireVector::FireVector(word_t bits_, int arity_) : bits(bits_), arity(arity_) {
  detail::require_arity(arity_);
  detail::require_bits(bits_, arity_);
}

CoordinateSet::CoordinateSet(word_t bits_, int arity_) : bits(bits_), arity(arity_) {
  detail::require_arity(arity_);
  detail::require_bits(bits_, arity_);
}

TransitionFunction::TransitionFunction(int arity, std::vector<word_t> table)
    : arity_(arity), table_(std::move(table)) {
  detail::require_arity(arity);
  if (table_.size() != (std::size_t{1} << arity_)) {
    throw UsageError("table holds " + std::to_string(table_.size()) + " entries, expected " +
                     std::to_string(std::size_t{1} << arity_));
  }
  for (word_t value : table_) detail::require_bits(value, arity_);
}

TransitionFunction TransitionFunction::constant(int arity, word_t value) {
  detail::require_arity(arity);
  detail::require_bits(value, arity);
  return TransitionFunction(arity, std::vector<word_t>(std::size_t{1} << arity, value));
}

TransitionFunction TransitionFunction::identity(int arity) {
  detail::require_arity(arity);
  std::vector<word_t> table(std::size_t{1} << arity);
  for (word_t mu = 0; mu < table.size(); ++mu) table[mu] = mu;
  return TransitionFunction(arity, std::move(table));
}

TransitionFunction TransitionFunction::from_index(int arity, std::uint64_t index) {
  detail::require_arity(arity);
  if ((std::size_t{1} << arity) * static_cast<std::size_t>(arity) > 64) {
    throw UsageError("packed table index needs more than 64 bits at arity " +
                     std::to_string(arity));
  }
  std::vector<word_t> table(std::size_t{1} << arity);
  for (word_t mu = 0; mu < table.size(); ++mu) {
    table[mu] = static_cast<word_t>((index >> (mu * arity)) & full_mask(arity));
  }
  return TransitionFunction(arity, std::move(table));
}

std::uint64_t TransitionFunction::to_index() const {
  if ((std::size_t{1} << arity_) * static_cast<std::size_t>(arity_) > 64) {
    throw UsageError("packed table index needs more than 64 bits at arity " +
                     std::to_string(arity_));
  }
  std::uint64_t index = 0;
  for (word_t mu = 0; mu < table_.size(); ++mu) {
    index |= static_cast<std::uint64_t>(table_[mu]) << (mu * arity_);
  }
  return index;
}

StateVector apply(const TransitionFunction& fn, StateVector mu) {
  detail::require_same_arity(fn.arity(), mu.arity);
  return StateVector(fn.value(mu.bits), fn.arity());
}

StateVector step(const TransitionFunction& fn, StateVector mu, FireVector fire) {
  detail::require_same_arity(fn.arity(), mu.arity);
  detail::require_same_arity(fn.arity(), fire.arity);
  return StateVector(fn.step(mu.bits, fire.bits), fn.arity());
}

StateVector apply_word(const TransitionFunction& fn, StateVector mu,
                       std::span<const FireVector> word) {
  detail::require_same_arity(fn.arity(), mu.arity);
  word_t state = mu.bits;
  for (const FireVector& fire : word) {
    detail::require_same_arity(fn.arity(), fire.arity);
    state = fn.step(state, fire.bits);
  }
  return StateVector(state, fn.arity());
}

std::optional<StateVector> constant_value(const TransitionFunction& fn) {
  const auto& table = fn.table();
  if (!std::all_of(table.begin(), table.end(), [&](word_t v) { return v == table[0]; })) {
    return std::nullopt;
  }
  return StateVector(table[0], fn.arity());
}

std::vector<StateVector> fixed_points(const TransitionFunction& fn) {
  std::vector<StateVector> points;
  for (word_t mu = 0; mu < fn.size(); ++mu) {
    if (fn.value(mu) == mu) points.emplace_back(mu, fn.arity());
  }
  return points;
}

CoordinateSet unstable_set(const TransitionFunction& fn, StateVector mu) {
  detail::require_same_arity(fn.arity(), mu.arity);
  return CoordinateSet(mu.bits ^ fn.value(mu.bits), fn.arity());
}

std::string bit_string(word_t bits, int arity) {
  detail::require_arity(arity);
  std::string text(static_cast<std::size_t>(arity), '0');
  for (int i = 0; i < arity; ++i) {
    if ((bits >> i) & 1u) text[static_cast<std::size_t>(i)] = '1';
  }
  return text;
}

std::pair<word_t, int> parse_bit_string(const std::string& text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxArity)) {
    throw UsageError("bit string '" + text + "' must have 1.." + std::to_string(kMaxArity) +
                     " characters");
  }
  word_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= word_t{1} << i;
    } else if (text[i] != '0') {
      throw UsageError("bit string '" + text + "' contains '" + std::string(1, text[i]) + "'");
    }
  }
  return {bits, static_cast<int>(text.size())};
}

}  // namespace raas
