#include "raas/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "strong_components.hpp"

namespace raas {

namespace {

std::vector<word_t> sorted_bits(std::span<const StateVector> states, int arity) {
  std::vector<word_t> bits;
  bits.reserve(states.size());
  for (const StateVector& s : states) {
    detail::require_same_arity(arity, s.arity);
    bits.push_back(s.bits);
  }
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  return bits;
}

bool contains_bits(const std::vector<word_t>& sorted, word_t value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

int index_in(const std::vector<word_t>& sorted, word_t value) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

int LabeledGraph::index_of(NodeId id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) return -1;
  return static_cast<int>(it - nodes.begin());
}

std::vector<word_t> LabeledGraph::labels_between(int from_index, int to_index) const {
  std::vector<word_t> labels;
  for (word_t v = 0; v < label_count(); ++v) {
    if (succ_at(from_index, v) == to_index) labels.push_back(v);
  }
  return labels;
}

std::size_t LabeledGraph::edge_count() const {
  std::size_t count = 0;
  for (std::int32_t target : succ) {
    if (target >= 0) ++count;
  }
  return count;
}

LabeledGraph build_graph(const TransitionFunction& fn, std::span<const StateVector> restrict_to) {
  LabeledGraph g;
  g.label_arity = fn.arity();
  g.zero_label_included = true;
  if (restrict_to.empty()) {
    g.nodes.resize(fn.size());
    for (std::size_t i = 0; i < fn.size(); ++i) g.nodes[i] = i;
  } else {
    for (word_t bits : sorted_bits(restrict_to, fn.arity())) g.nodes.push_back(bits);
  }
  g.succ.assign(g.nodes.size() << g.label_arity, -1);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const word_t state = static_cast<word_t>(g.nodes[i]);
    for (word_t v = 0; v < g.label_count(); ++v) {
      const int target = g.index_of(fn.step(state, v));
      g.succ[(i << g.label_arity) | v] = static_cast<std::int32_t>(target);
    }
  }
  return g;
}

bool Condensation::reaches(int from_component, int to_component) const {
  if (from_component == to_component) return true;
  if (from_component > to_component) return false;  // ids are topological
  std::vector<bool> seen(static_cast<std::size_t>(count), false);
  std::deque<int> queue{from_component};
  seen[from_component] = true;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int next : dag[c]) {
      if (next == to_component) return true;
      if (next <= to_component && !seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return false;
}

Condensation scc_condense(const LabeledGraph& g) {
  const int count = static_cast<int>(g.nodes.size());
  auto [component_count, component_of] = detail::strong_components(
      count, [&](int u, const auto& visit) {
        for (word_t v = 0; v < g.label_count(); ++v) {
          const std::int32_t t = g.succ_at(u, v);
          if (t >= 0) visit(t);
        }
      });

  Condensation result;
  result.count = component_count;
  result.component_of = std::move(component_of);
  result.internal_union.assign(static_cast<std::size_t>(component_count), 0);
  result.members.assign(static_cast<std::size_t>(component_count), {});
  result.dag.assign(static_cast<std::size_t>(component_count), {});
  for (int u = 0; u < count; ++u) {
    const int cu = result.component_of[u];
    result.members[cu].push_back(u);
    for (word_t v = 0; v < g.label_count(); ++v) {
      const std::int32_t t = g.succ_at(u, v);
      if (t < 0) continue;
      const int ct = result.component_of[t];
      if (ct == cu) {
        result.internal_union[cu] |= v;
      } else {
        result.dag[cu].push_back(ct);
      }
    }
  }
  for (auto& succs : result.dag) {
    std::sort(succs.begin(), succs.end());
    succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
  }
  return result;
}

namespace {

struct FilteredCondensation {
  int count = 0;
  std::vector<int> component_of;
  std::vector<word_t> internal_union;
};

// Condensation of the avoid-free subgraph; avoided nodes stay as isolated
// singletons with empty internal unions, keeping node indices stable.
FilteredCondensation condense_filtered(const LabeledGraph& g,
                                       const std::function<bool(int)>& avoided) {
  const int count = static_cast<int>(g.nodes.size());
  auto [component_count, component_of] = detail::strong_components(
      count, [&](int u, const auto& visit) {
        if (avoided && avoided(u)) return;
        for (word_t v = 0; v < g.label_count(); ++v) {
          const std::int32_t t = g.succ_at(u, v);
          if (t >= 0 && !(avoided && avoided(t))) visit(t);
        }
      });
  FilteredCondensation result;
  result.count = component_count;
  result.component_of = std::move(component_of);
  result.internal_union.assign(static_cast<std::size_t>(component_count), 0);
  for (int u = 0; u < count; ++u) {
    if (avoided && avoided(u)) continue;
    for (word_t v = 0; v < g.label_count(); ++v) {
      const std::int32_t t = g.succ_at(u, v);
      if (t < 0 || (avoided && avoided(t))) continue;
      if (result.component_of[t] == result.component_of[u]) {
        result.internal_union[result.component_of[u]] |= v;
      }
    }
  }
  return result;
}

std::function<bool(int)> avoid_set_predicate(const LabeledGraph& g,
                                             std::span<const NodeId> avoid) {
  std::vector<int> indices;
  for (NodeId id : avoid) {
    const int i = g.index_of(id);
    if (i >= 0) indices.push_back(i);
  }
  std::sort(indices.begin(), indices.end());
  return [indices = std::move(indices)](int i) {
    return std::binary_search(indices.begin(), indices.end(), i);
  };
}

}  // namespace

bool exists_fair_run(const LabeledGraph& g, NodeId from,
                     const std::function<bool(int)>& avoid_index) {
  const int start = g.index_of(from);
  if (start < 0 || (avoid_index && avoid_index(start))) return false;
  const word_t full = full_mask(g.label_arity);
  const FilteredCondensation cond = condense_filtered(g, avoid_index);

  std::vector<bool> seen(g.nodes.size(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (cond.internal_union[cond.component_of[u]] == full) return true;
    for (word_t v = 0; v < g.label_count(); ++v) {
      const std::int32_t t = g.succ_at(u, v);
      if (t < 0 || seen[t] || (avoid_index && avoid_index(t))) continue;
      seen[t] = true;
      queue.push_back(t);
    }
  }
  return false;
}

bool exists_fair_run(const LabeledGraph& g, NodeId from, std::span<const NodeId> avoid) {
  return exists_fair_run(g, from, avoid_set_predicate(g, avoid));
}

std::optional<std::pair<int, std::vector<FireVector>>> shortest_path_to(
    const LabeledGraph& g, NodeId from, const std::function<bool(int)>& goal,
    const std::function<bool(int)>& allowed) {
  const int start = g.index_of(from);
  if (start < 0 || (allowed && !allowed(start))) return std::nullopt;
  const int arity = g.label_arity;
  auto labels_of = [&](std::vector<std::int32_t> const& parent,
                       std::vector<word_t> const& via, int node) {
    std::vector<FireVector> labels;
    for (int u = node; parent[u] >= 0 && u != start; u = parent[u]) {
      labels.emplace_back(via[u], arity);
    }
    std::reverse(labels.begin(), labels.end());
    return labels;
  };

  std::vector<std::int32_t> parent(g.nodes.size(), -1);
  std::vector<word_t> via(g.nodes.size(), 0);
  std::vector<bool> seen(g.nodes.size(), false);
  if (goal(start)) return std::make_pair(start, std::vector<FireVector>{});
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (word_t v = 0; v < g.label_count(); ++v) {
      const std::int32_t t = g.succ_at(u, v);
      if (t < 0 || seen[t] || (allowed && !allowed(t))) continue;
      seen[t] = true;
      parent[t] = u;
      via[t] = v;
      if (goal(t)) return std::make_pair(static_cast<int>(t), labels_of(parent, via, t));
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

std::vector<int> reachable_indices(const LabeledGraph& g, NodeId from,
                                   const std::function<bool(int)>& allowed) {
  std::vector<int> result;
  const int start = g.index_of(from);
  if (start < 0 || (allowed && !allowed(start))) return result;
  std::vector<bool> seen(g.nodes.size(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    result.push_back(u);
    for (word_t v = 0; v < g.label_count(); ++v) {
      const std::int32_t t = g.succ_at(u, v);
      if (t < 0 || seen[t] || (allowed && !allowed(t))) continue;
      seen[t] = true;
      queue.push_back(t);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// Closed walk from `entry` inside its component whose labels cover every
// coordinate: repeatedly routes to the lexicographically least internal edge
// still contributing missing coordinates, then closes back to `entry`. Paths
// between nodes of one component never leave it.
std::vector<FireVector> fair_component_period(const LabeledGraph& g,
                                              const std::vector<int>& component_of, int entry) {
  const int arity = g.label_arity;
  const word_t full = full_mask(arity);
  const int component = component_of[entry];
  auto inside = [&](int i) { return component_of[i] == component; };

  std::vector<FireVector> period;
  word_t needed = full;
  int cursor = entry;
  while (needed != 0) {
    struct Pick {
      int source = -1;
      word_t label = 0;
      int distance = 0;
    };
    std::optional<Pick> best;
    // Distances from the cursor within the component.
    std::vector<int> distance(g.nodes.size(), -1);
    distance[cursor] = 0;
    std::deque<int> queue{cursor};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (word_t v = 0; v < g.label_count(); ++v) {
        const std::int32_t t = g.succ_at(u, v);
        if (t < 0 || !inside(t) || distance[t] >= 0) continue;
        distance[t] = distance[u] + 1;
        queue.push_back(t);
      }
    }
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      if (!inside(static_cast<int>(u)) || distance[u] < 0) continue;
      for (word_t v = 0; v < g.label_count(); ++v) {
        const std::int32_t t = g.succ_at(static_cast<int>(u), v);
        if (t < 0 || !inside(t) || (v & needed) == 0) continue;
        const Pick candidate{static_cast<int>(u), v, distance[u]};
        if (!best || candidate.distance < best->distance ||
            (candidate.distance == best->distance &&
             (candidate.source < best->source ||
              (candidate.source == best->source && candidate.label < best->label)))) {
          best = candidate;
        }
      }
    }
    if (!best) throw InternalError("fair component lost its covering edges");
    auto path = shortest_path_to(g, g.nodes[cursor], [&](int i) { return i == best->source; },
                                 inside);
    if (!path) throw InternalError("fair component is not strongly connected");
    for (const FireVector& fire : path->second) period.push_back(fire);
    period.emplace_back(best->label, arity);
    cursor = g.succ_at(best->source, best->label);
    needed &= ~best->label;
  }
  auto closing = shortest_path_to(g, g.nodes[cursor], [&](int i) { return i == entry; }, inside);
  if (!closing) throw InternalError("fair component is not strongly connected");
  for (const FireVector& fire : closing->second) period.push_back(fire);
  return period;
}

}  // namespace

std::optional<Schedule> fair_run_schedule(const LabeledGraph& g, NodeId from,
                                          const std::function<bool(int)>& avoid_index) {
  const int start = g.index_of(from);
  if (start < 0 || (avoid_index && avoid_index(start))) return std::nullopt;
  const word_t full = full_mask(g.label_arity);
  const FilteredCondensation cond = condense_filtered(g, avoid_index);
  auto allowed = [&](int i) { return !(avoid_index && avoid_index(i)); };
  auto entry_found = shortest_path_to(
      g, from, [&](int i) { return cond.internal_union[cond.component_of[i]] == full; }, allowed);
  if (!entry_found) return std::nullopt;

  // The period walks the avoid-free fair component; restricting the graph
  // view to that component keeps avoided nodes out.
  Schedule schedule;
  schedule.arity = g.label_arity;
  schedule.prefix = entry_found->second;
  schedule.period = fair_component_period(g, cond.component_of, entry_found->first);
  if (!validate_progressive(schedule)) {
    throw InternalError("fair run period failed to cover every coordinate");
  }
  return schedule;
}

std::optional<Schedule> fair_run_schedule(const LabeledGraph& g, NodeId from,
                                          std::span<const NodeId> avoid) {
  return fair_run_schedule(g, from, avoid_set_predicate(g, avoid));
}

namespace {

// Components holding `from` or a target, ascending; empty when some target is
// missing from the graph.
std::optional<std::vector<int>> chain_components(const LabeledGraph& g, const Condensation& cond,
                                                 int start, std::span<const NodeId> targets) {
  std::vector<int> components{cond.component_of[start]};
  for (NodeId id : targets) {
    const int i = g.index_of(id);
    if (i < 0) return std::nullopt;
    components.push_back(cond.component_of[i]);
  }
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()), components.end());
  return components;
}

}  // namespace

bool covering_walk_exists(const LabeledGraph& g, NodeId from, std::span<const NodeId> targets) {
  const int start = g.index_of(from);
  if (start < 0) return false;
  std::vector<bool> reachable(g.nodes.size(), false);
  for (int i : reachable_indices(g, from)) reachable[i] = true;
  for (NodeId id : targets) {
    const int i = g.index_of(id);
    if (i < 0 || !reachable[i]) return false;
  }
  const Condensation cond = scc_condense(g);
  const auto components = chain_components(g, cond, start, targets);
  if (!components) return false;
  for (std::size_t i = 0; i + 1 < components->size(); ++i) {
    if (!cond.reaches((*components)[i], (*components)[i + 1])) return false;
  }
  return true;
}

std::optional<std::vector<FireVector>> covering_walk_labels(const LabeledGraph& g, NodeId from,
                                                            std::span<const NodeId> targets) {
  if (!covering_walk_exists(g, from, targets)) return std::nullopt;
  const int start = g.index_of(from);
  const Condensation cond = scc_condense(g);

  std::vector<bool> wanted(g.nodes.size(), false);
  for (NodeId id : targets) wanted[g.index_of(id)] = true;
  wanted[start] = false;  // the walk starts there

  std::vector<FireVector> labels;
  int cursor = start;
  // Targets are absorbed component by component down the chain; within a
  // component the nearest one is taken first. BFS marks everything the walk
  // passes through.
  while (true) {
    int pending_component = -1;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (!wanted[i]) continue;
      if (pending_component < 0 || cond.component_of[i] < pending_component) {
        pending_component = cond.component_of[i];
      }
    }
    if (pending_component < 0) break;
    auto leg = shortest_path_to(g, g.nodes[cursor], [&](int i) {
      return wanted[i] && cond.component_of[i] == pending_component;
    });
    if (!leg) throw InternalError("covering walk lost a target that was reachable");
    int node = cursor;
    wanted[node] = false;
    for (const FireVector& fire : leg->second) {
      labels.push_back(fire);
      node = g.succ_at(node, fire.bits);
      wanted[node] = false;
    }
    cursor = leg->first;
  }
  return labels;
}

NodeId ProductLayout::pack(std::span<const word_t> states, word_t covered_bits,
                           std::span<const word_t> visited_masks) const {
  NodeId id = 0;
  int shift = 0;
  for (int i = 0; i < components; ++i, shift += arity) {
    id |= static_cast<NodeId>(states[i]) << shift;
  }
  if (coverage) {
    id |= static_cast<NodeId>(covered_bits) << shift;
    shift += arity;
  }
  for (int i = 0; i < (target_count > 0 ? components : 0); ++i, shift += target_count) {
    id |= static_cast<NodeId>(visited_masks[i]) << shift;
  }
  return id;
}

word_t ProductLayout::component(NodeId id, int i) const {
  return static_cast<word_t>((id >> (i * arity)) & full_mask(arity));
}

word_t ProductLayout::covered(NodeId id) const {
  return static_cast<word_t>((id >> (components * arity)) & full_mask(arity));
}

word_t ProductLayout::visited(NodeId id, int i) const {
  const int base = components * arity + (coverage ? arity : 0);
  return static_cast<word_t>((id >> (base + i * target_count)) &
                             full_mask(target_count));
}

bool ProductLayout::components_equal(NodeId id) const {
  const word_t first = component(id, 0);
  for (int i = 1; i < components; ++i) {
    if (component(id, i) != first) return false;
  }
  return true;
}

ProductGraph product_graph(const TransitionFunction& fn, std::span<const StateVector> starts,
                           const ProductOptions& options) {
  if (starts.size() < 2) throw UsageError("product needs at least two components");
  const int n = fn.arity();
  const int m = static_cast<int>(starts.size());

  ProductLayout layout;
  layout.arity = n;
  layout.components = m;
  layout.coverage = options.track_coverage;
  const std::vector<word_t> restrict_set =
      options.component_restrict.empty()
          ? std::vector<word_t>{}
          : sorted_bits(options.component_restrict, n);
  const std::vector<word_t> targets =
      options.visit_targets.empty() ? std::vector<word_t>{} : sorted_bits(options.visit_targets, n);
  layout.target_count = static_cast<int>(targets.size());
  if (layout.bits() > 63) {
    throw ResourceError("product node id exceeds 63 bits", std::uint64_t{1} << 63);
  }

  const word_t full = full_mask(n);
  std::vector<word_t> states(m), next(m), visited(m, 0), next_visited(m, 0);
  for (int i = 0; i < m; ++i) {
    detail::require_same_arity(n, starts[i].arity);
    states[i] = starts[i].bits;
    if (!restrict_set.empty() && !contains_bits(restrict_set, states[i])) {
      throw UsageError("product start lies outside the component restriction");
    }
    if (!targets.empty() && contains_bits(targets, states[i])) {
      visited[i] = word_t{1} << index_in(targets, states[i]);
    }
  }
  const NodeId start = layout.pack(states, 0, visited);

  std::unordered_set<NodeId> discovered{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    for (int i = 0; i < m; ++i) {
      states[i] = layout.component(id, i);
      visited[i] = layout.target_count > 0 ? layout.visited(id, i) : 0;
    }
    const word_t covered = layout.coverage ? layout.covered(id) : 0;
    for (word_t v = 0; v <= full; ++v) {
      bool allowed = true;
      for (int i = 0; i < m; ++i) {
        next[i] = fn.step(states[i], v);
        if (!restrict_set.empty() && !contains_bits(restrict_set, next[i])) {
          allowed = false;
          break;
        }
        next_visited[i] = visited[i];
        if (!targets.empty() && contains_bits(targets, next[i])) {
          next_visited[i] |= word_t{1} << index_in(targets, next[i]);
        }
      }
      if (!allowed) continue;
      const word_t next_covered = layout.coverage ? (covered | v) : 0;
      if (options.forbid_unequal_when_covered && next_covered == full) {
        bool equal = true;
        for (int i = 1; i < m; ++i) equal &= next[i] == next[0];
        if (!equal) continue;
      }
      const NodeId next_id = layout.pack(next, next_covered, next_visited);
      if (discovered.insert(next_id).second) {
        if (discovered.size() > options.node_budget) {
          throw ResourceError("product exceeded its node budget", discovered.size());
        }
        queue.push_back(next_id);
      }
    }
  }

  ProductGraph result;
  result.layout = layout;
  result.start = start;
  result.graph.label_arity = n;
  result.graph.zero_label_included = true;
  result.graph.nodes.assign(discovered.begin(), discovered.end());
  std::sort(result.graph.nodes.begin(), result.graph.nodes.end());
  result.graph.succ.assign(result.graph.nodes.size() << n, -1);
  for (std::size_t node_index = 0; node_index < result.graph.nodes.size(); ++node_index) {
    const NodeId id = result.graph.nodes[node_index];
    for (int i = 0; i < m; ++i) {
      states[i] = layout.component(id, i);
      visited[i] = layout.target_count > 0 ? layout.visited(id, i) : 0;
    }
    const word_t covered = layout.coverage ? layout.covered(id) : 0;
    for (word_t v = 0; v <= full; ++v) {
      bool allowed = true;
      for (int i = 0; i < m; ++i) {
        next[i] = fn.step(states[i], v);
        if (!restrict_set.empty() && !contains_bits(restrict_set, next[i])) {
          allowed = false;
          break;
        }
        next_visited[i] = visited[i];
        if (!targets.empty() && contains_bits(targets, next[i])) {
          next_visited[i] |= word_t{1} << index_in(targets, next[i]);
        }
      }
      if (!allowed) continue;
      const word_t next_covered = layout.coverage ? (covered | v) : 0;
      if (options.forbid_unequal_when_covered && next_covered == full) {
        bool equal = true;
        for (int i = 1; i < m; ++i) equal &= next[i] == next[0];
        if (!equal) continue;
      }
      const NodeId next_id = layout.pack(next, next_covered, next_visited);
      const int target = result.graph.index_of(next_id);
      result.graph.succ[(node_index << n) | v] = static_cast<std::int32_t>(target);
    }
  }
  return result;
}

std::vector<bool> fair_reach_flags(const LabeledGraph& g) {
  const word_t full = full_mask(g.label_arity);
  const Condensation cond = scc_condense(g);
  std::vector<bool> component_flag(static_cast<std::size_t>(cond.count), false);
  // Component ids are topological, so a reverse scan sees successors first.
  for (int c = cond.count - 1; c >= 0; --c) {
    bool flag = cond.internal_union[c] == full;
    for (int next : cond.dag[c]) flag = flag || component_flag[next];
    component_flag[c] = flag;
  }
  std::vector<bool> result(g.nodes.size(), false);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    result[i] = component_flag[cond.component_of[static_cast<int>(i)]];
  }
  return result;
}

}  // namespace raas
