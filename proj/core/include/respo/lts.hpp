#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "respo/program.hpp"

namespace respo {

// Label used when a self-loop is synthesized (deadlock completion, absorbing
// bad states). Reserved; models and exchange files may not declare actors on it.
inline constexpr const char* kIdleAction = "__idle";

// Explicit transition system. States are dense indices; when built from a
// program, index order is the lexicographic order of the assignment vectors
// (variables in declaration order) and assignments are retained.
struct Lts {
  uint32_t num_states = 0;
  uint32_t initial = 0;
  std::vector<uint8_t> is_bad;
  std::vector<uint32_t> bad;  // sorted

  // Forward edges in CSR form, sorted by (src, dst), deduplicated.
  std::vector<uint32_t> row_off;
  std::vector<uint32_t> col;
  std::vector<uint32_t> edge_action;

  // Reverse edges in CSR form.
  std::vector<uint32_t> rrow_off;
  std::vector<uint32_t> rcol;

  std::vector<std::string> actions;          // action id -> name
  std::vector<std::string> action_display;   // user-facing names, same order

  // Program-backed metadata; empty for generated or imported systems.
  std::vector<std::string> var_names;
  uint32_t num_vars = 0;
  std::vector<long long> state_values;  // num_states x num_vars, row-major

  uint32_t deadlock_completions = 0;  // states that received a synthesized loop
  uint32_t bad_edges_dropped = 0;     // imported outgoing edges removed from bad states

  std::span<const long long> state(uint32_t i) const {
    return {state_values.data() + static_cast<size_t>(i) * num_vars, num_vars};
  }
  std::span<const uint32_t> successors(uint32_t i) const {
    return {col.data() + row_off[i], col.data() + row_off[i + 1]};
  }
  std::span<const uint32_t> predecessors(uint32_t i) const {
    return {rcol.data() + rrow_off[i], rcol.data() + rrow_off[i + 1]};
  }
  uint32_t num_edges() const { return static_cast<uint32_t>(col.size()); }

  int action_id(const std::string& name) const;
  // -1 when no such assignment vector exists (binary search; program-backed only).
  int64_t find_state(std::span<const long long> values) const;
  std::string describe_state(uint32_t i) const;
};

// Assembles the CSR structure from a raw edge list: sorts, merges duplicate
// (src, dst) pairs keeping the lexicographically smallest action name, adds
// self-loops to states without successors (counted as deadlock completions),
// strips outgoing edges from bad states and gives them self-loops, builds the
// reverse adjacency, and fills `bad` from `is_bad`.
struct RawEdge {
  uint32_t src, dst, action;
};
void finalize_lts(Lts& lts, std::vector<RawEdge> edges);

struct BuildOptions {
  uint64_t max_states = 10'000'000;
  // Clamp update results to the nearest domain bound instead of failing.
  bool clamp = false;
};

// One scheduling choice: an action plus exactly one enabled command from every
// module that contains the action.
struct Selection {
  int action_id;  // into program.actions
  std::vector<std::pair<int, int>> commands;  // (module, command) pairs
};

// All selections enabled in a state, in action-id order; commands enumerated
// in lexicographic (module, command)-index order.
std::vector<Selection> enabled_selections(const Program& p,
                                          std::span<const long long> state);

// Applies a selection's updates simultaneously. Out-of-range results clamp or
// raise Error(update_out_of_range) depending on options.
std::vector<long long> apply_selection(const Program& p, const Selection& sel,
                                       std::span<const long long> state,
                                       const BuildOptions& opts);

// Explicit-state reachability from the initial valuation. States satisfying
// the safety invariant are bad and absorbing; they are not expanded. Raises
// Error(state_space_exceeded) past opts.max_states.
Lts build_ts(const Program& p, const BuildOptions& opts = {});

struct Counterexample {
  std::vector<uint32_t> states;
};

// Shortest path from the initial state to a bad state; among the shortest it
// returns the lexicographically smallest state-index sequence. nullopt when no
// bad state is reachable.
std::optional<Counterexample> find_counterexample(const Lts& lts);

// Checks that the path starts at the initial state, follows transitions, is
// loop-free, and ends in a bad state. Raises Error(invalid_counterexample).
void validate_counterexample(const Lts& lts, const Counterexample& cex);

}  // namespace respo
