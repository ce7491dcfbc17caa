#pragma once

#include <cstdint>
#include <vector>

namespace raas::detail {

// Iterative Tarjan over nodes 0..count-1. `for_each_succ(u, fn)` must invoke
// fn(v) for every successor of u in a fixed order; determinism of the
// resulting component ids follows from that order. Components are renumbered
// topologically: every edge u -> v with comp[u] != comp[v] has
// comp[u] < comp[v].
template <typename SuccFn>
std::pair<int, std::vector<int>> strong_components(int count, const SuccFn& for_each_succ) {
  constexpr int kUnvisited = -1;
  std::vector<int> index(static_cast<std::size_t>(count), kUnvisited);
  std::vector<int> lowlink(static_cast<std::size_t>(count), 0);
  std::vector<int> component(static_cast<std::size_t>(count), kUnvisited);
  std::vector<bool> on_stack(static_cast<std::size_t>(count), false);
  std::vector<int> stack;
  int next_index = 0;
  int component_count = 0;

  struct Frame {
    int node;
    int child_cursor;  // resumes iteration after returning from a child
  };
  std::vector<Frame> call_stack;
  std::vector<int> succ_buffer;

  for (int root = 0; root < count; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const int u = frame.node;
      if (frame.child_cursor == 0) {
        index[u] = lowlink[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      succ_buffer.clear();
      for_each_succ(u, [&](int v) { succ_buffer.push_back(v); });
      bool descended = false;
      while (frame.child_cursor < static_cast<int>(succ_buffer.size())) {
        const int v = succ_buffer[frame.child_cursor++];
        if (index[v] == kUnvisited) {
          call_stack.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v] && index[v] < lowlink[u]) lowlink[u] = index[v];
      }
      if (descended) continue;
      if (lowlink[u] == index[u]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = component_count;
          if (w == u) break;
        }
        ++component_count;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const int parent = call_stack.back().node;
        if (lowlink[u] < lowlink[parent]) lowlink[parent] = lowlink[u];
      }
    }
  }

  // Tarjan finishes sinks first; flip ids so edges ascend.
  for (int& c : component) c = component_count - 1 - c;
  return {component_count, std::move(component)};
}

}  // namespace raas::detail
