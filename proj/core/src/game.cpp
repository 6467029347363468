#include "respo/game.hpp"

#include <algorithm>

#include "respo/errors.hpp"

namespace respo {

SafetyGame SafetyGame::from_edges(uint32_t num_states, uint32_t initial,
                                  std::vector<std::pair<uint32_t, uint32_t>> edges,
                                  std::vector<uint8_t> safe_owned,
                                  std::vector<uint8_t> is_bad) {
  SafetyGame g;
  g.num_states = num_states;
  g.initial = initial;
  g.safe_owned = std::move(safe_owned);
  g.is_bad = std::move(is_bad);

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<uint8_t> has_out(num_states, 0);
  for (auto [u, v] : edges) has_out[u] = 1;
  for (uint32_t u = 0; u < num_states; ++u)
    if (!has_out[u]) edges.emplace_back(u, u);
  std::sort(edges.begin(), edges.end());

  g.row_off.assign(num_states + 1, 0);
  g.col.resize(edges.size());
  for (auto [u, v] : edges) ++g.row_off[u + 1];
  for (uint32_t i = 0; i < num_states; ++i) g.row_off[i + 1] += g.row_off[i];
  for (size_t i = 0; i < edges.size(); ++i) g.col[i] = edges[i].second;
  return g;
}

WinningRegion solve(const SafetyGame& game) {
  uint32_t n = game.num_states;
  size_t m = game.col.size();

  // Reverse adjacency.
  std::vector<uint32_t> roff(n + 1, 0), rcol(m);
  for (uint32_t v : game.col) ++roff[v + 1];
  for (uint32_t i = 0; i < n; ++i) roff[i + 1] += roff[i];
  {
    std::vector<uint32_t> cursor(roff.begin(), roff.end() - 1);
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t v : game.successors(u)) rcol[cursor[v]++] = u;
  }

  std::vector<uint32_t> remaining(n);
  for (uint32_t u = 0; u < n; ++u) remaining[u] = game.row_off[u + 1] - game.row_off[u];

  std::vector<uint8_t> attracted(n, 0);
  std::vector<uint32_t> queue;
  queue.reserve(n);
  for (uint32_t u = 0; u < n; ++u) {
    if (game.is_bad[u]) {
      attracted[u] = 1;
      queue.push_back(u);
    }
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t v = queue[qi];
    for (uint32_t i = roff[v]; i < roff[v + 1]; ++i) {
      uint32_t u = rcol[i];
      if (attracted[u]) continue;
      if (!game.safe_owned[u] || --remaining[u] == 0) {
        attracted[u] = 1;
        queue.push_back(u);
      }
    }
  }

  WinningRegion region;
  region.safe_wins.resize(n);
  for (uint32_t u = 0; u < n; ++u) region.safe_wins[u] = attracted[u] ? 0 : 1;
  return region;
}

int value(const SafetyGame& game) {
  return solve(game).safe_wins[game.initial] ? 1 : 0;
}

std::vector<int64_t> extract_strategy(const SafetyGame& game,
                                      const WinningRegion& region) {
  std::vector<int64_t> strategy(game.num_states, -1);
  for (uint32_t u = 0; u < game.num_states; ++u) {
    if (!game.safe_owned[u] || !region.safe_wins[u]) continue;
    for (uint32_t v : game.successors(u)) {
      if (region.safe_wins[v]) {
        strategy[u] = v;
        break;
      }
    }
  }
  return strategy;
}

}  // namespace respo
