#pragma once

#include <cstdint>

#include "respo/lts.hpp"
#include "respo/signature.hpp"

namespace respo {

struct GeneratedModel {
  Lts lts;
  ResponsibilitySignature signature;  // validated; aux and adv empty
};

// Chain 0..n where state i steps forward by each step size (capped at n);
// state n is bad. Actor j holds the states with index j modulo m.
GeneratedModel gen_linear(uint32_t n, uint32_t m,
                          const std::vector<uint32_t>& steps = {1, 2, 3});

// Every non-bad state gets `out_degree` distinct random successors (never
// itself); a seeded share of states (at least one, never the initial state)
// is bad; extra edges are added until some bad state is reachable. States are
// shuffled into m actors whose sizes differ by at most one. Deterministic in
// (n, m, seed).
GeneratedModel gen_random(uint32_t n, uint32_t m, uint64_t seed,
                          double bad_fraction = 0.01, uint32_t out_degree = 6);

// Complete binary tree truncated to n states in heap order, root initial;
// leaves self-loop and every leaf_period-th leaf (0-based: 9, 19, ...) is bad.
// Actors are m near-equal contiguous index ranges.
GeneratedModel gen_tree(uint32_t n, uint32_t m, uint32_t leaf_period = 10);

}  // namespace respo
