#include "raas/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace raas {

namespace {

void require_schedule_shape(const Schedule& schedule) {
  detail::require_arity(schedule.arity);
  if (schedule.period.empty()) {
    throw UsageError("schedule period must be non-empty");
  }
  for (const FireVector& fire : schedule.prefix) {
    detail::require_same_arity(schedule.arity, fire.arity);
  }
  for (const FireVector& fire : schedule.period) {
    detail::require_same_arity(schedule.arity, fire.arity);
  }
}

}  // namespace

FireVector Schedule::fire_at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return period[(k - prefix.size()) % period.size()];
}

bool validate_progressive(const Schedule& schedule) {
  require_schedule_shape(schedule);
  word_t period_union = 0;
  for (const FireVector& fire : schedule.period) period_union |= fire.bits;
  return period_union == full_mask(schedule.arity);
}

int coverage_index(const Schedule& schedule) {
  if (!validate_progressive(schedule)) {
    throw UsageError("coverage index is only defined for progressive schedules");
  }
  const word_t full = full_mask(schedule.arity);
  word_t seen = 0;
  const std::size_t bound = schedule.prefix.size() + schedule.period.size();
  for (std::size_t k = 0; k < bound; ++k) {
    seen |= schedule.fire_at(k).bits;
    if (seen == full) return static_cast<int>(k);
  }
  throw InternalError("progressive schedule failed to cover within one period");
}

TimeGrid TimeGrid::with_head(std::vector<double> head) {
  for (std::size_t i = 0; i + 1 < head.size(); ++i) {
    if (!(head[i] < head[i + 1])) {
      throw UsageError("time grid must be strictly increasing");
    }
  }
  for (double t : head) {
    if (!std::isfinite(t)) throw UsageError("time grid entries must be finite");
  }
  TimeGrid grid;
  grid.head_ = std::move(head);
  return grid;
}

double TimeGrid::at(std::size_t k) const {
  if (k < head_.size()) return head_[k];
  if (head_.empty()) return static_cast<double>(k);
  return head_.back() + static_cast<double>(k - head_.size() + 1);
}

std::ptrdiff_t TimeGrid::interval_index(double t) const {
  if (t < at(0)) return -1;
  // Grows by one per unit beyond the head, so the index is bounded below by a
  // direct computation and found by a short forward scan.
  std::size_t k = 0;
  if (!head_.empty() && t >= head_.back()) {
    k = head_.size() - 1;
  } else if (head_.empty()) {
    k = static_cast<std::size_t>(t < 0 ? 0 : t);
  }
  while (at(k + 1) <= t) ++k;
  return static_cast<std::ptrdiff_t>(k);
}

bool OrbitSet::contains(StateVector state) const {
  return std::binary_search(states.begin(), states.end(), state);
}

StateVector Flow::at(double t) const { return flow_at(*fn, initial, schedule, grid, t); }

OrbitSet Flow::orbit() const { return raas::orbit(*fn, initial, schedule); }

Flow make_flow(const TransitionFunction& fn, StateVector initial, Schedule schedule,
               TimeGrid grid) {
  detail::require_same_arity(fn.arity(), initial.arity);
  if (!validate_progressive(schedule)) {
    throw UsageError("flow requires a progressive schedule");
  }
  detail::require_same_arity(fn.arity(), schedule.arity);
  return Flow{&fn, initial, std::move(schedule), std::move(grid)};
}

StateVector flow_at(const TransitionFunction& fn, StateVector initial, const Schedule& schedule,
                    const TimeGrid& grid, double t) {
  detail::require_same_arity(fn.arity(), initial.arity);
  detail::require_same_arity(fn.arity(), schedule.arity);
  require_schedule_shape(schedule);
  const std::ptrdiff_t k = grid.interval_index(t);
  if (k < 0) return initial;
  return flow_at_step(fn, initial, schedule, static_cast<std::size_t>(k));
}

StateVector flow_at_step(const TransitionFunction& fn, StateVector initial,
                         const Schedule& schedule, std::size_t k) {
  detail::require_same_arity(fn.arity(), initial.arity);
  word_t state = initial.bits;
  for (std::size_t i = 0; i <= k; ++i) {
    state = fn.step(state, schedule.fire_at(i).bits);
  }
  return StateVector(state, fn.arity());
}

OrbitSet orbit(const TransitionFunction& fn, StateVector initial, const Schedule& schedule) {
  detail::require_same_arity(fn.arity(), initial.arity);
  detail::require_same_arity(fn.arity(), schedule.arity);
  if (!validate_progressive(schedule)) {
    throw UsageError("orbit requires a progressive schedule");
  }

  const std::size_t prefix_len = schedule.prefix.size();
  const std::size_t period_len = schedule.period.size();
  const std::size_t positions = prefix_len + period_len;
  std::vector<bool> seen((fn.size()) * positions, false);
  std::unordered_set<word_t> states;
  states.insert(initial.bits);

  // (state, schedule position) pairs live in a space of |Bⁿ|·positions, so a
  // repeat arrives within that many steps plus one period.
  const std::size_t bound = fn.size() * positions + period_len + 1;
  word_t state = initial.bits;
  for (std::size_t k = 0; k < bound; ++k) {
    const std::size_t position =
        k < prefix_len ? k : prefix_len + (k - prefix_len) % period_len;
    const std::size_t key = static_cast<std::size_t>(state) * positions + position;
    if (k >= prefix_len) {
      if (seen[key]) {
        OrbitSet result;
        result.states.reserve(states.size());
        for (word_t s : states) result.states.emplace_back(s, fn.arity());
        std::sort(result.states.begin(), result.states.end());
        return result;
      }
      seen[key] = true;
    }
    state = fn.step(state, schedule.fire_at(k).bits);
    states.insert(state);
  }
  throw InternalError("orbit iteration exceeded its cycle-detection bound");
}

}  // namespace raas
