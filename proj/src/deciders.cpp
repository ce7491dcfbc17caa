#include "raas/deciders.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "strong_components.hpp"

namespace raas {

namespace {

Schedule fair_all_ones_tail(int arity, std::vector<FireVector> prefix) {
  Schedule schedule;
  schedule.arity = arity;
  schedule.prefix = std::move(prefix);
  schedule.period = {FireVector(full_mask(arity), arity)};
  return schedule;
}

Schedule concat_prefix(std::vector<FireVector> front, Schedule tail) {
  front.insert(front.end(), tail.prefix.begin(), tail.prefix.end());
  tail.prefix = std::move(front);
  return tail;
}

Witness schedule_witness(Schedule schedule, std::vector<StateVector> states = {},
                         std::vector<std::int64_t> time_indices = {}) {
  Witness witness;
  witness.schedule = std::move(schedule);
  witness.states = std::move(states);
  witness.time_indices = std::move(time_indices);
  return witness;
}

Witness state_witness(std::vector<StateVector> states) {
  Witness witness;
  witness.states = std::move(states);
  return witness;
}

ProductGraph pair_product(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                          bool coverage, bool forbid, const DeciderOptions& options) {
  ProductOptions product_options;
  product_options.track_coverage = coverage;
  product_options.forbid_unequal_when_covered = forbid;
  product_options.node_budget = options.product_node_budget;
  const StateVector starts[] = {mu, mu2};
  return product_graph(fn, starts, product_options);
}

}  // namespace

std::vector<StateVector> all_states(int arity) {
  detail::require_arity(arity);
  std::vector<StateVector> states;
  states.reserve(std::size_t{1} << arity);
  for (word_t bits = 0; bits <= full_mask(arity); ++bits) states.emplace_back(bits, arity);
  return states;
}

Verdict agree_exists(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                     const DeciderOptions& options) {
  detail::require_same_arity(fn.arity(), mu.arity);
  detail::require_same_arity(fn.arity(), mu2.arity);
  if (mu == mu2) {
    if (!options.build_witnesses) return Verdict::yes("identical-states");
    return Verdict::yes("identical-states",
                        schedule_witness(fair_all_ones_tail(fn.arity(), {}), {mu}));
  }
  ProductGraph pg;
  try {
    pg = pair_product(fn, mu, mu2, /*coverage=*/true, /*forbid=*/true, options);
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
  auto path = shortest_path_to(pg.graph, pg.start,
                               [&](int i) { return pg.layout.components_equal(pg.graph.nodes[i]); });
  if (!path) return Verdict::no("no-covered-merge");
  if (!options.build_witnesses) return Verdict::yes("merge-path");
  const StateVector merged(pg.layout.component(pg.graph.nodes[path->first], 0), fn.arity());
  const auto steps = static_cast<std::int64_t>(path->second.size());
  return Verdict::yes("merge-path", schedule_witness(fair_all_ones_tail(fn.arity(),
                                                                        std::move(path->second)),
                                                     {merged}, {steps - 1}));
}

namespace {

// Shared search behind p-independence and n-dependence: for each anchor μ in
// ascending order, the first μ' that cannot merge with it, if any.
struct AnchorScan {
  std::optional<StateVector> anchor;           // first μ agreeing with every μ'
  std::vector<StateVector> failing_partners;   // per μ, first non-merging μ'
};

AnchorScan scan_anchors(const TransitionFunction& fn, const DeciderOptions& options) {
  AnchorScan scan;
  DeciderOptions quiet = options;
  quiet.build_witnesses = false;
  for (const StateVector& mu : all_states(fn.arity())) {
    std::optional<StateVector> failing;
    for (const StateVector& mu2 : all_states(fn.arity())) {
      if (agree_exists(fn, mu, mu2, quiet).is_false()) {
        failing = mu2;
        break;
      }
    }
    if (!failing) {
      scan.anchor = mu;
      scan.failing_partners.clear();
      break;
    }
    scan.failing_partners.push_back(*failing);
  }
  return scan;
}

}  // namespace

Verdict p_independent(const TransitionFunction& fn, const DeciderOptions& options) {
  const AnchorScan scan = scan_anchors(fn, options);
  if (scan.anchor) return Verdict::yes("anchor-state", state_witness({*scan.anchor}));
  return Verdict::no("no-anchor-state", state_witness(scan.failing_partners));
}

Verdict n_dependent(const TransitionFunction& fn, const DeciderOptions& options) {
  const AnchorScan scan = scan_anchors(fn, options);
  if (scan.anchor) return Verdict::no("anchor-state", state_witness({*scan.anchor}));
  return Verdict::yes("no-anchor-state", state_witness(scan.failing_partners));
}

Verdict n_independent(const TransitionFunction& fn, const DeciderOptions&) {
  if (auto value = constant_value(fn)) {
    return Verdict::yes("constant-function", state_witness({*value}));
  }
  return Verdict::no("non-constant");
}

Verdict n_independent_direct(const TransitionFunction& fn, const DeciderOptions& options) {
  for (const StateVector& mu : all_states(fn.arity())) {
    bool anchor_holds = true;
    for (const StateVector& mu2 : all_states(fn.arity())) {
      if (mu == mu2) continue;
      ProductGraph pg;
      try {
        pg = pair_product(fn, mu, mu2, /*coverage=*/true, /*forbid=*/false, options);
      } catch (const ResourceError&) {
        return Verdict::unknown("budget-exceeded");
      }
      const word_t full = full_mask(fn.arity());
      auto separation = shortest_path_to(pg.graph, pg.start, [&](int i) {
        const NodeId id = pg.graph.nodes[i];
        return pg.layout.covered(id) == full && !pg.layout.components_equal(id);
      });
      if (separation) {
        anchor_holds = false;
        break;
      }
    }
    if (anchor_holds) return Verdict::yes("anchor-state", state_witness({mu}));
  }
  return Verdict::no("no-anchor-state");
}

Verdict p_dependent(const TransitionFunction& fn, const DeciderOptions&) {
  if (auto value = constant_value(fn)) {
    return Verdict::no("constant-function", state_witness({*value}));
  }
  return Verdict::yes("non-constant");
}

Verdict pairwise_mergeable_all(const TransitionFunction& fn, const DeciderOptions& options) {
  DeciderOptions quiet = options;
  quiet.build_witnesses = false;
  for (const StateVector& mu : all_states(fn.arity())) {
    for (const StateVector& mu2 : all_states(fn.arity())) {
      if (mu2.bits <= mu.bits) continue;
      if (agree_exists(fn, mu, mu2, quiet).is_false()) {
        return Verdict::no("non-merging-pair", state_witness({mu, mu2}));
      }
    }
  }
  return Verdict::yes("all-pairs-merge");
}

namespace {

// Orbit-pair configurations (a, b, V, W) with monotone visited sets V, W.
// Materialized as a LabeledGraph so the fairness machinery applies; when
// `disjoint_only` is set, intersecting configurations are excluded (the
// atemporal-p search), otherwise the caller scans for intersections.
struct OrbitPairSpace {
  LabeledGraph graph;
  NodeId start = 0;
  bool intersecting_reachable = false;
};

OrbitPairSpace orbit_pair_space(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                                bool disjoint_only, const DeciderOptions& options) {
  const int n = fn.arity();
  const int states_bits = 2 * n;
  const int set_bits = 1 << n;
  auto pack = [&](word_t a, word_t b, word_t va, word_t vb) -> NodeId {
    return static_cast<NodeId>(a) | (static_cast<NodeId>(b) << n) |
           (static_cast<NodeId>(va) << states_bits) |
           (static_cast<NodeId>(vb) << (states_bits + set_bits));
  };
  auto next_of = [&](NodeId id, word_t v) -> std::optional<NodeId> {
    const word_t a = static_cast<word_t>(id & full_mask(n));
    const word_t b = static_cast<word_t>((id >> n) & full_mask(n));
    const word_t va = static_cast<word_t>((id >> states_bits) & full_mask(set_bits));
    const word_t vb = static_cast<word_t>((id >> (states_bits + set_bits)) & full_mask(set_bits));
    const word_t a2 = fn.step(a, v);
    const word_t b2 = fn.step(b, v);
    const word_t va2 = va | (word_t{1} << a2);
    const word_t vb2 = vb | (word_t{1} << b2);
    if (disjoint_only && (va2 & vb2) != 0) return std::nullopt;
    return pack(a2, b2, va2, vb2);
  };

  OrbitPairSpace space;
  const NodeId start = pack(mu.bits, mu2.bits, word_t{1} << mu.bits, word_t{1} << mu2.bits);
  space.start = start;
  if (disjoint_only && ((word_t{1} << mu.bits) & (word_t{1} << mu2.bits)) != 0) {
    // Identical initial states cannot have disjoint orbits; empty space.
    space.intersecting_reachable = true;
    return space;
  }

  std::unordered_set<NodeId> discovered{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    for (word_t v = 0; v <= full_mask(n); ++v) {
      const auto next = next_of(id, v);
      if (!next) {
        space.intersecting_reachable = true;
        continue;
      }
      if (!disjoint_only) {
        const word_t va = static_cast<word_t>((*next >> states_bits) & full_mask(set_bits));
        const word_t vb =
            static_cast<word_t>((*next >> (states_bits + set_bits)) & full_mask(set_bits));
        if ((va & vb) != 0) space.intersecting_reachable = true;
      }
      if (discovered.insert(*next).second) {
        if (discovered.size() > options.config_budget) {
          throw ResourceError("orbit-pair search exceeded its budget", discovered.size());
        }
        queue.push_back(*next);
      }
    }
  }

  space.graph.label_arity = n;
  space.graph.nodes.assign(discovered.begin(), discovered.end());
  std::sort(space.graph.nodes.begin(), space.graph.nodes.end());
  space.graph.succ.assign(space.graph.nodes.size() << n, -1);
  for (std::size_t i = 0; i < space.graph.nodes.size(); ++i) {
    for (word_t v = 0; v <= full_mask(n); ++v) {
      const auto next = next_of(space.graph.nodes[i], v);
      if (!next) continue;
      space.graph.succ[(i << n) | v] =
          static_cast<std::int32_t>(space.graph.index_of(*next));
    }
  }
  return space;
}

Verdict separated_temporal_p(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                             const DeciderOptions& options) {
  if (mu == mu2) return Verdict::no("identical-states");
  ProductGraph pg;
  try {
    pg = pair_product(fn, mu, mu2, /*coverage=*/true, /*forbid=*/false, options);
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
  const word_t full = full_mask(fn.arity());
  auto path = shortest_path_to(pg.graph, pg.start, [&](int i) {
    const NodeId id = pg.graph.nodes[i];
    return pg.layout.covered(id) == full && !pg.layout.components_equal(id);
  });
  if (!path) return Verdict::no("no-separation-path");
  if (!options.build_witnesses) return Verdict::yes("separation-path");
  const NodeId id = pg.graph.nodes[path->first];
  const StateVector a(pg.layout.component(id, 0), fn.arity());
  const StateVector b(pg.layout.component(id, 1), fn.arity());
  const auto steps = static_cast<std::int64_t>(path->second.size());
  return Verdict::yes("separation-path",
                      schedule_witness(fair_all_ones_tail(fn.arity(), std::move(path->second)),
                                       {a, b}, {steps - 1, steps - 1}));
}

Verdict separated_weak_p(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                         const DeciderOptions& options) {
  if (mu == mu2) return Verdict::no("identical-states");
  ProductGraph pg;
  try {
    pg = pair_product(fn, mu, mu2, /*coverage=*/true, /*forbid=*/false, options);
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
  const word_t full = full_mask(fn.arity());
  auto separated_node = [&](int i) {
    const NodeId id = pg.graph.nodes[i];
    return pg.layout.covered(id) == full && !pg.layout.components_equal(id);
  };
  auto diagonal_node = [&](int i) { return pg.layout.components_equal(pg.graph.nodes[i]); };

  // Nodes from which the diagonal is still reachable (differences die out).
  std::vector<bool> remerges(pg.graph.nodes.size(), false);
  for (std::size_t i = 0; i < pg.graph.nodes.size(); ++i) {
    remerges[i] = diagonal_node(static_cast<int>(i));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pg.graph.nodes.size(); ++i) {
      if (remerges[i]) continue;
      for (word_t v = 0; v <= full; ++v) {
        const std::int32_t t = pg.graph.succ_at(static_cast<int>(i), v);
        if (t >= 0 && remerges[t]) {
          remerges[i] = true;
          changed = true;
          break;
        }
      }
    }
  }

  auto first_leg = shortest_path_to(pg.graph, pg.start, [&](int i) {
    return separated_node(i) && remerges[static_cast<std::size_t>(i)];
  });
  if (!first_leg) {
    const bool any_separation =
        shortest_path_to(pg.graph, pg.start, separated_node).has_value();
    return Verdict::no(any_separation ? "no-remerge-after-separation" : "no-separation-path");
  }
  if (!options.build_witnesses) return Verdict::yes("separation-then-merge");
  auto second_leg = shortest_path_to(pg.graph, pg.graph.nodes[first_leg->first], diagonal_node);
  if (!second_leg) throw InternalError("remerge flag pointed at an unreachable diagonal");
  const NodeId sep_id = pg.graph.nodes[first_leg->first];
  const StateVector a(pg.layout.component(sep_id, 0), fn.arity());
  const StateVector b(pg.layout.component(sep_id, 1), fn.arity());
  const StateVector merged(pg.layout.component(pg.graph.nodes[second_leg->first], 0), fn.arity());
  const auto first_steps = static_cast<std::int64_t>(first_leg->second.size());
  const auto total_steps = first_steps + static_cast<std::int64_t>(second_leg->second.size());
  std::vector<FireVector> labels = std::move(first_leg->second);
  labels.insert(labels.end(), second_leg->second.begin(), second_leg->second.end());
  return Verdict::yes("separation-then-merge",
                      schedule_witness(fair_all_ones_tail(fn.arity(), std::move(labels)),
                                       {a, b, merged}, {first_steps - 1, total_steps - 1}));
}

Verdict separated_strong_p(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                           const DeciderOptions& options) {
  // "∀t" includes t < t_0, so equal initial states can never strongly
  // separate.
  if (mu == mu2) return Verdict::no("identical-states");
  ProductGraph pg;
  try {
    pg = pair_product(fn, mu, mu2, /*coverage=*/false, /*forbid=*/false, options);
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
  auto diagonal = [&](int i) { return pg.layout.components_equal(pg.graph.nodes[i]); };
  if (!exists_fair_run(pg.graph, pg.start, diagonal)) {
    return Verdict::no("no-fair-offdiagonal-run");
  }
  if (!options.build_witnesses) return Verdict::yes("fair-offdiagonal-run");
  auto schedule = fair_run_schedule(pg.graph, pg.start, diagonal);
  if (!schedule) throw InternalError("fair off-diagonal run lost its witness");
  return Verdict::yes("fair-offdiagonal-run", schedule_witness(std::move(*schedule)));
}

Verdict separated_atemporal(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                            Quantifier quantifier, const DeciderOptions& options) {
  if (fn.arity() > options.atemporal_max_arity) return Verdict::unknown("arity-guard");
  // Both orbits contain the shared initial state.
  if (mu == mu2) return Verdict::no("orbit-intersection");
  try {
    if (quantifier == Quantifier::Possibly) {
      const OrbitPairSpace space =
          orbit_pair_space(fn, mu, mu2, /*disjoint_only=*/true, options);
      if (space.graph.nodes.empty()) return Verdict::no("orbit-intersection");
      if (!exists_fair_run(space.graph, space.start, std::function<bool(int)>{})) {
        return Verdict::no("no-disjoint-fair-run");
      }
      if (!options.build_witnesses) return Verdict::yes("disjoint-fair-run");
      auto schedule = fair_run_schedule(space.graph, space.start, std::function<bool(int)>{});
      if (!schedule) throw InternalError("disjoint fair run lost its witness");
      return Verdict::yes("disjoint-fair-run", schedule_witness(std::move(*schedule)));
    }
    // Necessity: some schedule intersecting the orbits refutes it; any finite
    // intersecting prefix extends to a progressive schedule.
    const OrbitPairSpace space =
        orbit_pair_space(fn, mu, mu2, /*disjoint_only=*/false, options);
    if (space.intersecting_reachable) return Verdict::no("orbit-intersection");
    return Verdict::yes("orbits-never-intersect");
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
}

Verdict negate(Verdict verdict) {
  if (verdict.is_unknown()) return verdict;
  verdict.value = verdict.is_true() ? Truth::False : Truth::True;
  return verdict;
}

Verdict separated_strong_n(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                           const DeciderOptions& options) {
  if (mu == mu2) return Verdict::no("identical-states");
  ProductGraph pg;
  try {
    pg = pair_product(fn, mu, mu2, /*coverage=*/false, /*forbid=*/false, options);
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
  auto path = shortest_path_to(pg.graph, pg.start,
                               [&](int i) { return pg.layout.components_equal(pg.graph.nodes[i]); });
  if (!path) return Verdict::yes("diagonal-unreachable");
  if (!options.build_witnesses) return Verdict::no("diagonal-reachable");
  const StateVector merged(pg.layout.component(pg.graph.nodes[path->first], 0), fn.arity());
  const auto steps = static_cast<std::int64_t>(path->second.size());
  return Verdict::no("diagonal-reachable",
                     schedule_witness(fair_all_ones_tail(fn.arity(), std::move(path->second)),
                                      {merged}, {steps - 1}));
}

}  // namespace

Verdict separated(const TransitionFunction& fn, StateVector mu, StateVector mu2,
                  SeparationMode mode, Quantifier quantifier, const DeciderOptions& options) {
  detail::require_same_arity(fn.arity(), mu.arity);
  detail::require_same_arity(fn.arity(), mu2.arity);
  if (quantifier == Quantifier::Possibly) {
    switch (mode) {
      case SeparationMode::Temporal: return separated_temporal_p(fn, mu, mu2, options);
      case SeparationMode::Weak: return separated_weak_p(fn, mu, mu2, options);
      case SeparationMode::Strong: return separated_strong_p(fn, mu, mu2, options);
      case SeparationMode::Atemporal:
        return separated_atemporal(fn, mu, mu2, Quantifier::Possibly, options);
    }
  }
  switch (mode) {
    case SeparationMode::Temporal: return negate(agree_exists(fn, mu, mu2, options));
    case SeparationMode::Weak:
      // The ∀ρ reading of a boundedness condition over a ρ-dependent set is
      // ambiguous; reported, never guessed.
      return Verdict::unknown("ambiguous-definition");
    case SeparationMode::Strong: return separated_strong_n(fn, mu, mu2, options);
    case SeparationMode::Atemporal:
      return separated_atemporal(fn, mu, mu2, Quantifier::Necessarily, options);
  }
  throw InternalError("unhandled separation mode");
}

Verdict point_transitive(const TransitionFunction& fn, StateVector mu, TransitivityMode mode,
                         const DeciderOptions& options) {
  detail::require_same_arity(fn.arity(), mu.arity);
  const LabeledGraph g = build_graph(fn);
  const std::vector<StateVector> everything = all_states(fn.arity());
  std::vector<NodeId> targets;
  for (const StateVector& s : everything) targets.push_back(s.bits);

  switch (mode) {
    case TransitivityMode::WeakP: {
      const std::vector<int> reach = reachable_indices(g, mu.bits);
      if (reach.size() == g.nodes.size()) return Verdict::yes("all-states-reachable");
      std::vector<bool> reached(g.nodes.size(), false);
      for (int i : reach) reached[i] = true;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (!reached[i]) {
          return Verdict::no("unreachable-state",
                             state_witness({StateVector(static_cast<word_t>(g.nodes[i]),
                                                        fn.arity())}));
        }
      }
      throw InternalError("reachability count disagreed with its flags");
    }
    case TransitivityMode::StrongP: {
      if (!covering_walk_exists(g, mu.bits, targets)) {
        const std::vector<int> reach = reachable_indices(g, mu.bits);
        return Verdict::no(reach.size() == g.nodes.size() ? "scc-antichain"
                                                          : "unreachable-state");
      }
      if (!options.build_witnesses) return Verdict::yes("covering-chain");
      auto labels = covering_walk_labels(g, mu.bits, targets);
      if (!labels) throw InternalError("covering walk vanished between checks");
      return Verdict::yes("covering-chain",
                          schedule_witness(fair_all_ones_tail(fn.arity(), std::move(*labels))));
    }
    case TransitivityMode::N: {
      for (const StateVector& other : everything) {
        if (other == mu) continue;
        const NodeId avoid[] = {other.bits};
        if (exists_fair_run(g, mu.bits, avoid)) {
          if (!options.build_witnesses) {
            return Verdict::no("fair-run-avoids-state", state_witness({other}));
          }
          auto schedule = fair_run_schedule(g, mu.bits, avoid);
          if (!schedule) throw InternalError("fair avoiding run lost its witness");
          Witness witness = schedule_witness(std::move(*schedule), {other});
          return Verdict::no("fair-run-avoids-state", std::move(witness));
        }
      }
      return Verdict::yes("every-fair-run-covers");
    }
  }
  throw InternalError("unhandled transitivity mode");
}

namespace {

std::vector<StateVector> sorted_set(const TransitionFunction& fn,
                                    std::span<const StateVector> set) {
  if (set.empty()) throw UsageError("state set must be non-empty");
  std::vector<StateVector> result(set.begin(), set.end());
  for (const StateVector& s : result) detail::require_same_arity(fn.arity(), s.arity);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

// Covering schedule within the restricted graph: walk every target from `mu`,
// then settle into the chain's fair bottom component.
Schedule restricted_covering_schedule(const LabeledGraph& g, StateVector mu,
                                      std::span<const NodeId> targets) {
  auto labels = covering_walk_labels(g, mu.bits, targets);
  if (!labels) throw InternalError("restricted covering walk vanished between checks");
  word_t end = mu.bits;
  for (const FireVector& fire : *labels) {
    end = static_cast<word_t>(g.nodes[g.succ_at(g.index_of(end), fire.bits)]);
  }
  auto tail = fair_run_schedule(g, end, std::span<const NodeId>{});
  if (!tail) throw InternalError("fair tail vanished below a covering walk");
  return concat_prefix(std::move(*labels), std::move(*tail));
}

Verdict set_transitive_weak(const TransitionFunction& fn, const std::vector<StateVector>& set,
                            const DeciderOptions& options) {
  const LabeledGraph g = build_graph(fn, set);
  const Condensation cond = scc_condense(g);
  for (int c = 0; c + 1 < cond.count; ++c) {
    if (!cond.reaches(c, c + 1)) return Verdict::no("scc-antichain");
  }
  if (cond.internal_union[cond.count - 1] != full_mask(fn.arity())) {
    return Verdict::no("unfair-bottom-scc");
  }
  std::vector<NodeId> targets;
  for (const StateVector& s : set) targets.push_back(s.bits);
  for (const StateVector& mu : set) {
    const std::vector<int> reach = reachable_indices(g, mu.bits);
    if (reach.size() != g.nodes.size()) {
      std::vector<bool> reached(g.nodes.size(), false);
      for (int i : reach) reached[i] = true;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (!reached[i]) {
          return Verdict::no("missing-state-reachability",
                             state_witness({mu, StateVector(static_cast<word_t>(g.nodes[i]),
                                                            fn.arity())}));
        }
      }
    }
  }
  if (!options.build_witnesses) return Verdict::yes("per-state-covering-chain");
  return Verdict::yes("per-state-covering-chain",
                      schedule_witness(restricted_covering_schedule(g, set.front(), targets)));
}

Verdict set_transitive_necessary(const TransitionFunction& fn,
                                 const std::vector<StateVector>& set,
                                 const DeciderOptions& options) {
  const LabeledGraph full_graph = build_graph(fn);
  const LabeledGraph g = build_graph(fn, set);
  std::vector<bool> in_set(full_graph.nodes.size(), false);
  for (const StateVector& s : set) in_set[s.bits] = true;

  for (const StateVector& mu : set) {
    // Any finite escaping prefix extends to a progressive schedule, so plain
    // reachability decides invariance under every ρ.
    for (int i : reachable_indices(full_graph, mu.bits)) {
      if (!in_set[static_cast<std::size_t>(full_graph.nodes[i])]) {
        const StateVector escapee(static_cast<word_t>(full_graph.nodes[i]), fn.arity());
        if (!options.build_witnesses) {
          return Verdict::no("escape-possible", state_witness({mu, escapee}));
        }
        auto path = shortest_path_to(full_graph, mu.bits, [&](int j) {
          return full_graph.nodes[j] == escapee.bits;
        });
        if (!path) throw InternalError("escape state vanished between checks");
        return Verdict::no("escape-possible",
                           schedule_witness(fair_all_ones_tail(fn.arity(),
                                                               std::move(path->second)),
                                            {mu, escapee}));
      }
    }
    for (const StateVector& target : set) {
      if (target == mu) continue;
      const NodeId avoid[] = {target.bits};
      if (exists_fair_run(g, mu.bits, avoid)) {
        if (!options.build_witnesses) {
          return Verdict::no("fair-run-avoids-state", state_witness({mu, target}));
        }
        auto schedule = fair_run_schedule(g, mu.bits, avoid);
        if (!schedule) throw InternalError("fair avoiding run lost its witness");
        return Verdict::no("fair-run-avoids-state",
                           schedule_witness(std::move(*schedule), {mu, target}));
      }
    }
  }
  return Verdict::yes("orbit-always-equals-set");
}

// Candidate tails tried before emitting a constructed witness; the first
// schedule under which every member's orbit equals the set wins.
std::vector<Schedule> simple_schedule_candidates(int arity) {
  std::vector<Schedule> candidates;
  candidates.push_back(fair_all_ones_tail(arity, {}));
  if (arity >= 2) {
    Schedule ascending;
    ascending.arity = arity;
    for (int i = 0; i < arity; ++i) ascending.period.emplace_back(word_t{1} << i, arity);
    candidates.push_back(ascending);
    Schedule descending;
    descending.arity = arity;
    for (int i = arity - 1; i >= 0; --i) descending.period.emplace_back(word_t{1} << i, arity);
    candidates.push_back(descending);
  }
  return candidates;
}

bool schedule_realizes_set(const TransitionFunction& fn, const std::vector<StateVector>& set,
                           const Schedule& schedule) {
  OrbitSet expected;
  expected.states = set;
  for (const StateVector& mu : set) {
    if (orbit(fn, mu, schedule) != expected) return false;
  }
  return true;
}

Verdict set_transitive_strong(const TransitionFunction& fn, const std::vector<StateVector>& set,
                              const DeciderOptions& options) {
  const int n = fn.arity();
  if (set.size() == 1) {
    const StateVector only = set.front();
    if (fn.value(only.bits) == only.bits) {
      return Verdict::yes("stationary-state",
                          schedule_witness(fair_all_ones_tail(n, {}), {only}));
    }
    return Verdict::no("unstable-singleton", state_witness({only}));
  }

  const auto m = static_cast<std::uint64_t>(set.size());
  // Tuple space |A|^|A| times per-component visited masks 2^(|A|²).
  long double size_estimate = 1.0L;
  for (std::uint64_t i = 0; i < m; ++i) size_estimate *= static_cast<long double>(m);
  for (std::uint64_t i = 0; i < m * m; ++i) size_estimate *= 2.0L;
  if (size_estimate > static_cast<long double>(options.product_node_budget)) {
    return Verdict::unknown("budget-exceeded");
  }

  try {
    ProductOptions plain_options;
    plain_options.component_restrict = set;
    plain_options.node_budget = options.product_node_budget;
    const ProductGraph plain = product_graph(fn, set, plain_options);
    const std::vector<bool> fair_capable = fair_reach_flags(plain.graph);

    ProductOptions cover_options = plain_options;
    cover_options.visit_targets = set;
    const ProductGraph cover = product_graph(fn, set, cover_options);

    const word_t visited_full = full_mask(static_cast<int>(set.size()));
    std::vector<word_t> components(set.size());
    auto goal = [&](int i) {
      const NodeId id = cover.graph.nodes[i];
      for (int c = 0; c < cover.layout.components; ++c) {
        if (cover.layout.visited(id, c) != visited_full) return false;
        components[static_cast<std::size_t>(c)] = cover.layout.component(id, c);
      }
      const NodeId plain_id = plain.layout.pack(components, 0, {});
      const int plain_index = plain.graph.index_of(plain_id);
      if (plain_index < 0) throw InternalError("covered tuple missing from the plain product");
      return static_cast<bool>(fair_capable[static_cast<std::size_t>(plain_index)]);
    };
    auto path = shortest_path_to(cover.graph, cover.start, goal);
    if (!path) return Verdict::no("no-shared-covering-run");
    if (!options.build_witnesses) return Verdict::yes("shared-covering-run");

    for (const Schedule& candidate : simple_schedule_candidates(n)) {
      if (schedule_realizes_set(fn, set, candidate)) {
        return Verdict::yes("shared-covering-run", schedule_witness(candidate));
      }
    }
    const NodeId goal_id = cover.graph.nodes[path->first];
    for (int c = 0; c < cover.layout.components; ++c) {
      components[static_cast<std::size_t>(c)] = cover.layout.component(goal_id, c);
    }
    auto tail = fair_run_schedule(plain.graph, plain.layout.pack(components, 0, {}),
                                  std::span<const NodeId>{});
    if (!tail) throw InternalError("fair tail vanished below a covering product");
    Schedule schedule = concat_prefix(std::move(path->second), std::move(*tail));
    if (!schedule_realizes_set(fn, set, schedule)) {
      throw InternalError("constructed shared schedule failed its replay");
    }
    return Verdict::yes("shared-covering-run", schedule_witness(std::move(schedule)));
  } catch (const ResourceError&) {
    return Verdict::unknown("budget-exceeded");
  }
}

}  // namespace

Verdict set_transitive(const TransitionFunction& fn, std::span<const StateVector> set,
                       TransitivityMode mode, const DeciderOptions& options) {
  const std::vector<StateVector> sorted = sorted_set(fn, set);
  switch (mode) {
    case TransitivityMode::WeakP: return set_transitive_weak(fn, sorted, options);
    case TransitivityMode::StrongP: return set_transitive_strong(fn, sorted, options);
    case TransitivityMode::N: return set_transitive_necessary(fn, sorted, options);
  }
  throw InternalError("unhandled transitivity mode");
}

Verdict system_transitive(const TransitionFunction& fn, TransitivityMode mode,
                          const DeciderOptions& options) {
  const std::vector<StateVector> everything = all_states(fn.arity());
  if (mode != TransitivityMode::StrongP) {
    return set_transitive(fn, everything, mode, options);
  }

  // One shared schedule exists iff every state admits its own covering walk:
  // the per-state covering words concatenate (each later component starts
  // wherever the earlier words left it, and every state is covering-capable),
  // and Bⁿ imposes no invariance constraint on the shared tail. Cross-checked
  // against the synchronized-product route and the oracle in the test suite.
  const LabeledGraph g = build_graph(fn);
  std::vector<NodeId> targets;
  for (const StateVector& s : everything) targets.push_back(s.bits);
  for (const StateVector& mu : everything) {
    if (!covering_walk_exists(g, mu.bits, targets)) {
      const std::vector<int> reach = reachable_indices(g, mu.bits);
      Verdict verdict = Verdict::no(reach.size() == g.nodes.size() ? "scc-antichain"
                                                                   : "unreachable-state");
      verdict.witness = state_witness({mu});
      return verdict;
    }
  }
  if (!options.build_witnesses) return Verdict::yes("pointwise-covering-chain");

  std::vector<FireVector> labels;
  std::vector<word_t> positions;
  for (const StateVector& s : everything) positions.push_back(s.bits);
  for (std::size_t component = 0; component < positions.size(); ++component) {
    auto walk = covering_walk_labels(g, positions[component], targets);
    if (!walk) throw InternalError("covering walk vanished between checks");
    for (const FireVector& fire : *walk) {
      labels.push_back(fire);
      for (word_t& position : positions) position = fn.step(position, fire.bits);
    }
  }
  Schedule schedule = fair_all_ones_tail(fn.arity(), std::move(labels));
  for (const Schedule& candidate : simple_schedule_candidates(fn.arity())) {
    if (schedule_realizes_set(fn, everything, candidate)) {
      schedule = candidate;
      break;
    }
  }
  if (!schedule_realizes_set(fn, everything, schedule)) {
    throw InternalError("concatenated covering schedule failed its replay");
  }
  return Verdict::yes("pointwise-covering-chain", schedule_witness(std::move(schedule)));
}

Verdict decide(const TransitionFunction& fn, const PropertyQuery& query,
               const DeciderOptions& options) {
  using Kind = PropertyQuery::Kind;
  auto require_pair = [&]() {
    if (!query.mu || !query.mu2) throw UsageError(query.name() + " needs --mu and --mu2");
  };
  switch (query.kind) {
    case Kind::AgreeExists:
      require_pair();
      return agree_exists(fn, *query.mu, *query.mu2, options);
    case Kind::PairwiseMergeableAll: return pairwise_mergeable_all(fn, options);
    case Kind::PIndependent: return p_independent(fn, options);
    case Kind::NIndependent: return n_independent(fn, options);
    case Kind::PDependent: return p_dependent(fn, options);
    case Kind::NDependent: return n_dependent(fn, options);
    case Kind::Separated:
      require_pair();
      return separated(fn, *query.mu, *query.mu2, query.separation_mode, query.quantifier,
                       options);
    case Kind::PointTransitive:
      if (!query.mu) throw UsageError("point transitivity needs --mu");
      return point_transitive(fn, *query.mu, query.transitivity_mode, options);
    case Kind::SetTransitive:
      return set_transitive(fn, query.set, query.transitivity_mode, options);
    case Kind::SystemTransitive:
      if (query.mu) return point_transitive(fn, *query.mu, query.transitivity_mode, options);
      if (!query.set.empty()) {
        return set_transitive(fn, query.set, query.transitivity_mode, options);
      }
      return system_transitive(fn, query.transitivity_mode, options);
  }
  throw InternalError("unhandled property kind");
}

}  // namespace raas
