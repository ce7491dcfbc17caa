#pragma once

#include <cstddef>
#include <vector>

#include "raas/core.hpp"

namespace raas {

// Ultimately periodic representation of a progressive fire-vector sequence:
// step k is prefix[k] for k < |prefix| and period[(k-|prefix|) mod |period|]
// after that. The sequence is progressive exactly when the period's vectors
// union to (1,…,1); prefixes and periods may contain all-zero vectors, which
// stutter without effect.
struct Schedule {
  int arity = 1;
  std::vector<FireVector> prefix;
  std::vector<FireVector> period;

  FireVector fire_at(std::size_t k) const;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// True iff the induced infinite sequence fires every coordinate infinitely
// often. Throws UsageError when the period is empty or arities disagree.
bool validate_progressive(const Schedule& schedule);

// Smallest K with α⁰ ∪ … ∪ α^K = (1,…,1); requires a progressive schedule.
// Never exceeds |prefix| + |period| - 1.
int coverage_index(const Schedule& schedule);

// Strictly increasing, unbounded sequence t_0 < t_1 < …  An explicit head may
// pin the first grid points; after the head the grid continues in unit steps.
// The default (empty head) is the canonical grid t_k = k.
class TimeGrid {
 public:
  TimeGrid() = default;
  static TimeGrid canonical() { return TimeGrid(); }
  static TimeGrid with_head(std::vector<double> head);

  double at(std::size_t k) const;
  // Largest k with t_k <= t, or -1 when t precedes the whole grid.
  std::ptrdiff_t interval_index(double t) const;
  const std::vector<double>& head() const { return head_; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> head_;
};

// All states a flow ever attains, including the initial state (the value on
// (-∞, t_0)). Kept sorted ascending.
struct OrbitSet {
  std::vector<StateVector> states;

  bool contains(StateVector state) const;
  friend bool operator==(const OrbitSet&, const OrbitSet&) = default;
};

// Piecewise-constant trajectory of `initial` under `schedule` on `grid`:
// value `initial` before t_0 and apply_word over the first k+1 fire vectors
// on [t_k, t_{k+1}).
struct Flow {
  const TransitionFunction* fn = nullptr;
  StateVector initial;
  Schedule schedule;
  TimeGrid grid;

  StateVector at(double t) const;
  OrbitSet orbit() const;
};

Flow make_flow(const TransitionFunction& fn, StateVector initial, Schedule schedule,
               TimeGrid grid = TimeGrid::canonical());

StateVector flow_at(const TransitionFunction& fn, StateVector initial, const Schedule& schedule,
                    const TimeGrid& grid, double t);

// Flow value on the k-th grid interval [t_k, t_{k+1}), i.e. after k+1 steps.
StateVector flow_at_step(const TransitionFunction& fn, StateVector initial,
                         const Schedule& schedule, std::size_t k);

// Exact orbit by iterating until the (state, position-in-schedule) pair
// repeats; terminates within 2ⁿ·(|prefix|+|period|) + |period| steps.
OrbitSet orbit(const TransitionFunction& fn, StateVector initial, const Schedule& schedule);

}  // namespace raas
