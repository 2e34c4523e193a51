#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace maxreg::detail {

/// Iterative Tarjan. comp[v] numbers components in reverse topological order.
inline std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj,
                                                   std::size_t& count) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> frames;
  std::size_t next = 0;
  count = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      const std::uint32_t v = frames.back().first;
      std::size_t& cursor = frames.back().second;
      if (cursor < adj[v].size()) {
        const std::uint32_t w = adj[v][cursor++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[v]);
      if (low[v] == index[v]) {
        for (;;) {
          const std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace maxreg::detail
