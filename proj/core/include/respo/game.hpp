#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace respo {

// Two-player safety game on a total graph. The Safe player wins a play iff it
// never visits a bad state; ownership decides who moves at each state.
struct SafetyGame {
  uint32_t num_states = 0;
  uint32_t initial = 0;
  std::vector<uint8_t> safe_owned;
  std::vector<uint8_t> is_bad;
  std::vector<uint32_t> row_off;
  std::vector<uint32_t> col;

  std::span<const uint32_t> successors(uint32_t i) const {
    return {col.data() + row_off[i], col.data() + row_off[i + 1]};
  }

  // Builds the CSR from an arbitrary edge list; duplicates are merged and
  // states without successors get a self-loop so the graph is total.
  static SafetyGame from_edges(uint32_t num_states, uint32_t initial,
                               std::vector<std::pair<uint32_t, uint32_t>> edges,
                               std::vector<uint8_t> safe_owned,
                               std::vector<uint8_t> is_bad);
};

struct WinningRegion {
  std::vector<uint8_t> safe_wins;  // per state
};

// Attractor computation, linear in states plus edges: bad states seed the
// Reach attractor; a Reach state joins when one successor is attracted, a Safe
// state when all are. Everything else is won by Safe.
WinningRegion solve(const SafetyGame& game);

// 1 iff Safe wins from the initial state.
int value(const SafetyGame& game);

// For each Safe-owned winning state, the smallest-index winning successor;
// -1 elsewhere. Following it from any winning state never leaves the region.
std::vector<int64_t> extract_strategy(const SafetyGame& game, const WinningRegion& region);

}  // namespace respo
