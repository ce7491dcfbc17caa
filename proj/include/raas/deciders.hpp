#pragma once

#include <cstdint>
#include <span>

#include "raas/graph.hpp"
#include "raas/property.hpp"

namespace raas {

struct DeciderOptions {
  // Node cap for synchronized products (set strong-p-transitivity needs
  // |A|^|A| · 2^(|A|²) in the worst case; beyond the cap the verdict is
  // Unknown, never a guess).
  std::uint64_t product_node_budget = std::uint64_t{1} << 24;
  // Cap on visited-orbit-pair configurations for atemporal separation.
  std::uint64_t config_budget = std::uint64_t{1} << 24;
  // Atemporal separation is exact up to this arity and Unknown above it.
  int atemporal_max_arity = 3;
  // Witness construction can be skipped in bulk sweeps.
  bool build_witnesses = true;
};

// ∃ρ making both flows equal at every covered time. Equality is absorbing in
// the shared-schedule product, so this is a path search to the diagonal that
// never touches a covered unequal node.
Verdict agree_exists(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                     const DeciderOptions& options = {});

// ∃μ ∀μ': agree_exists(μ, μ'). The literal one-anchor quantifier prefix.
Verdict p_independent(const TransitionFunction& fn, const DeciderOptions& options = {});
// Exact negation of p_independent; the witness pairs each μ with a partner.
Verdict n_dependent(const TransitionFunction& fn, const DeciderOptions& options = {});

// Fast path: n-independence holds exactly for constant functions.
Verdict n_independent(const TransitionFunction& fn, const DeciderOptions& options = {});
// Direct-definition checker (no constancy shortcut); must agree with
// n_independent on every input.
Verdict n_independent_direct(const TransitionFunction& fn, const DeciderOptions& options = {});
// Exact negation of n_independent.
Verdict p_dependent(const TransitionFunction& fn, const DeciderOptions& options = {});

// Exploration-only ∀μ∀μ' merge variant; never substituted for p_independent.
Verdict pairwise_mergeable_all(const TransitionFunction& fn, const DeciderOptions& options = {});

Verdict separated(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                  SeparationMode mode, Quantifier quantifier,
                  const DeciderOptions& options = {});

Verdict point_transitive(const TransitionFunction& fn, StateVector mu, TransitivityMode mode,
                         const DeciderOptions& options = {});

Verdict set_transitive(const TransitionFunction& fn, std::span<const StateVector> set,
                       TransitivityMode mode, const DeciderOptions& options = {});

Verdict system_transitive(const TransitionFunction& fn, TransitivityMode mode,
                          const DeciderOptions& options = {});

// Dispatch by query; transitivity queries pick point/set/system from the
// arguments present.
Verdict decide(const TransitionFunction& fn, const PropertyQuery& query,
               const DeciderOptions& options = {});

std::vector<StateVector> all_states(int arity);

}  // namespace raas
