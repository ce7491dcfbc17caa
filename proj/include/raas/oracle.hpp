#pragma once

#include <cstdint>
#include <vector>

#include "raas/deciders.hpp"
#include "raas/property.hpp"

namespace raas {

// Bounded brute-force evaluation of the property definitions, independent of
// the transition-graph machinery: schedule words are enumerated directly
// (zero fire vectors excluded as redundant stuttering, deduplicating words
// that reach the same configuration), and fairness is decided by closing
// words into periods whose label union covers every coordinate.
struct OracleConfig {
  // Maximum explored word length; -1 explores until the configuration space
  // is exhausted, which is exact (every space here is finite).
  int depth = -1;
  // Permit lasso closure; fairness-dependent properties are Unknown without
  // it.
  bool lasso = true;
  // Cap on expanded configurations across one check.
  std::uint64_t budget = std::uint64_t{1} << 22;
};

Verdict oracle_check(const TransitionFunction& fn, const PropertyQuery& query,
                     const OracleConfig& config = {});

// Exposed for the transition-graph cross-checks: literal fair-run search over
// enumerated words, avoiding the given states.
Verdict oracle_fair_run_exists(const TransitionFunction& fn, StateVector from,
                               std::span<const StateVector> avoid,
                               const OracleConfig& config = {});

// Literal covering-walk search (one word visiting every target).
Verdict oracle_covering_walk(const TransitionFunction& fn, StateVector from,
                             std::span<const StateVector> targets,
                             const OracleConfig& config = {});

enum class SweepFamily {
  Independence,   // p/n-independence, p/n-dependence, pairwise mergeability
  Pairwise,       // agree-exists and every separation mode over all pairs
  PointTransitivity,
  SetTransitivity,    // all non-empty subsets; arity 2 only
  SystemTransitivity,
};

// Query list a sweep evaluates for one function of the given arity.
std::vector<PropertyQuery> sweep_queries(int arity, std::span<const SweepFamily> families);

struct SweepDisagreement {
  std::uint64_t function_index;
  PropertyQuery query;
  Truth decider;
  Truth oracle;
};

struct SweepReport {
  std::uint64_t functions_checked = 0;
  std::uint64_t queries_checked = 0;
  std::uint64_t unknown_pairs = 0;  // both sides Unknown (documented cases)
  std::vector<SweepDisagreement> disagreements;
};

struct SweepOptions {
  int arity = 2;
  std::vector<SweepFamily> families;
  // Exhaustive at arity 2; at arity 3 this many function indices are sampled
  // deterministically from the seed.
  std::uint64_t sample_count = 500;
  std::uint64_t seed = 20240901;
  bool parallel = true;
};

// Decider verdict vs oracle verdict for every function and query; any value
// disagreement or one-sided Unknown lands in `disagreements`.
SweepReport oracle_sweep(const SweepOptions& options, const OracleConfig& oracle_config = {},
                         const DeciderOptions& decider_options = {});

}  // namespace raas
