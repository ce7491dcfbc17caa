#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "raas/core.hpp"
#include "raas/schedule.hpp"

namespace raas {

using NodeId = std::uint64_t;

// Explicit labeled transition graph. Labels are fire vectors over
// `label_arity` coordinates; the successor of node i under label v sits at
// succ[(i << label_arity) | v], -1 when the edge leaves the node set. Nodes
// are kept ascending by packed id, which fixes every iteration order in the
// module (exports and witnesses depend on that).
struct LabeledGraph {
  int label_arity = 0;
  bool zero_label_included = true;
  std::vector<NodeId> nodes;
  std::vector<std::int32_t> succ;

  std::size_t label_count() const { return std::size_t{1} << label_arity; }
  int index_of(NodeId id) const;
  std::int32_t succ_at(int node_index, word_t label) const {
    return succ[(static_cast<std::size_t>(node_index) << label_arity) | label];
  }
  // Labels v with an edge from `from_index` to `to_index`, ascending.
  std::vector<word_t> labels_between(int from_index, int to_index) const;
  std::size_t edge_count() const;
};

// One node per state (all of Bⁿ, or `restrict_to`), one edge per fire vector;
// edges whose target falls outside the node set are dropped. Zero labels are
// included, so every node carries the stuttering self-loop.
LabeledGraph build_graph(const TransitionFunction& fn,
                         std::span<const StateVector> restrict_to = {});

// SCC partition with component ids in topological order (cross edges go from
// lower to higher id), per-component union of internal edge labels, and the
// condensation DAG.
struct Condensation {
  int count = 0;
  std::vector<int> component_of;          // per node index
  std::vector<word_t> internal_union;     // per component
  std::vector<std::vector<int>> members;  // per component, ascending node indices
  std::vector<std::vector<int>> dag;      // per component, ascending successor ids

  bool reaches(int from_component, int to_component) const;
};

Condensation scc_condense(const LabeledGraph& g);

// True iff the avoid-free subgraph contains, reachable from `from`, an SCC
// whose internal labels union to (1,…,1): exactly the components in which a
// progressive run can stay forever. `from` inside the avoid set is
// immediately false.
bool exists_fair_run(const LabeledGraph& g, NodeId from, std::span<const NodeId> avoid);
bool exists_fair_run(const LabeledGraph& g, NodeId from,
                     const std::function<bool(int)>& avoid_index);

// Witness for exists_fair_run: shortest path into the first fair component
// plus a closed walk through it covering every coordinate; the period's
// labels union to (1,…,1) by construction.
std::optional<Schedule> fair_run_schedule(const LabeledGraph& g, NodeId from,
                                          std::span<const NodeId> avoid);
std::optional<Schedule> fair_run_schedule(const LabeledGraph& g, NodeId from,
                                          const std::function<bool(int)>& avoid_index);

// True iff one walk from `from` visits every target: all targets reachable
// and the components containing targets (or `from`) form a chain in the
// condensation order. Walks may revisit nodes, so comparability is the only
// obstruction.
bool covering_walk_exists(const LabeledGraph& g, NodeId from, std::span<const NodeId> targets);

// The walk itself (labels), deterministic: targets are visited component by
// component down the chain, nearest-first within a component.
std::optional<std::vector<FireVector>> covering_walk_labels(const LabeledGraph& g, NodeId from,
                                                            std::span<const NodeId> targets);

// Node ids for products pack m component states (n bits each, component 0
// lowest), then the fired-so-far union when tracked, then per-component
// visited masks over `visit_targets` when tracked.
struct ProductLayout {
  int arity = 0;
  int components = 0;
  bool coverage = false;
  int target_count = 0;

  int bits() const {
    return components * arity + (coverage ? arity : 0) + components * target_count;
  }
  NodeId pack(std::span<const word_t> states, word_t covered,
              std::span<const word_t> visited) const;
  word_t component(NodeId id, int i) const;
  word_t covered(NodeId id) const;
  word_t visited(NodeId id, int i) const;
  bool components_equal(NodeId id) const;
};

struct ProductOptions {
  bool track_coverage = false;
  // Excludes nodes with full coverage and unequal components (the forbidden
  // region of the merge search).
  bool forbid_unequal_when_covered = false;
  // When non-empty, every component is confined to this set.
  std::vector<StateVector> component_restrict;
  // When non-empty, per-component visited masks over this set are tracked.
  std::vector<StateVector> visit_targets;
  std::uint64_t node_budget = std::uint64_t{1} << 24;
};

// m synchronized copies of the system driven by one shared fire vector per
// step — the schedule is common to all components. Only nodes reachable from
// the start tuple are materialized. Throws ResourceError over budget.
struct ProductGraph {
  LabeledGraph graph;
  ProductLayout layout;
  NodeId start = 0;
};

ProductGraph product_graph(const TransitionFunction& fn, std::span<const StateVector> starts,
                           const ProductOptions& options = {});

// Deterministic BFS (labels ascending, FIFO): the returned path is shortest
// and lexicographically least among shortest. `allowed` defaults to all.
std::optional<std::pair<int, std::vector<FireVector>>> shortest_path_to(
    const LabeledGraph& g, NodeId from, const std::function<bool(int)>& goal,
    const std::function<bool(int)>& allowed = {});

std::vector<int> reachable_indices(const LabeledGraph& g, NodeId from,
                                   const std::function<bool(int)>& allowed = {});

// Per-node flag: a fair component is reachable from the node.
std::vector<bool> fair_reach_flags(const LabeledGraph& g);

}  // namespace raas
