#include "respo/benchgen.hpp"

#include <algorithm>
#include <numeric>

#include "respo/errors.hpp"
#include "respo/rng.hpp"

namespace respo {

namespace {

void check_counts(uint64_t states, uint32_t m) {
  if (m < 1) fail(ErrorKind::usage, "need at least one actor");
  if (states < m)
    fail(ErrorKind::usage, "fewer states than actors (" + std::to_string(states) +
                               " < " + std::to_string(m) + ")");
}

ResponsibilitySignature modulo_actors(uint32_t states, uint32_t m) {
  ResponsibilitySignature sig;
  for (uint32_t j = 0; j < m; ++j) {
    sig.actor_names.push_back("a" + std::to_string(j));
    sig.actor_states.emplace_back();
  }
  for (uint32_t i = 0; i < states; ++i) sig.actor_states[i % m].push_back(i);
  return sig;
}

ResponsibilitySignature chunk_actors(uint32_t states, uint32_t m) {
  ResponsibilitySignature sig;
  for (uint32_t j = 0; j < m; ++j) {
    uint32_t lo = static_cast<uint32_t>(uint64_t{states} * j / m);
    uint32_t hi = static_cast<uint32_t>(uint64_t{states} * (j + 1) / m);
    sig.actor_names.push_back("a" + std::to_string(j));
    sig.actor_states.emplace_back();
    for (uint32_t i = lo; i < hi; ++i) sig.actor_states.back().push_back(i);
  }
  return sig;
}

}  // namespace

GeneratedModel gen_linear(uint32_t n, uint32_t m, const std::vector<uint32_t>& steps) {
  check_counts(uint64_t{n} + 1, m);
  if (steps.empty()) fail(ErrorKind::usage, "need at least one step size");

  GeneratedModel out;
  Lts& lts = out.lts;
  lts.num_states = n + 1;
  lts.initial = 0;
  lts.is_bad.assign(n + 1, 0);
  lts.is_bad[n] = 1;
  for (uint32_t k : steps) {
    lts.actions.push_back("step" + std::to_string(k));
    lts.action_display.push_back(lts.actions.back());
  }

  std::vector<RawEdge> edges;
  for (uint32_t i = 0; i < n; ++i)
    for (size_t s = 0; s < steps.size(); ++s)
      edges.push_back({i, std::min(i + steps[s], n), static_cast<uint32_t>(s)});
  finalize_lts(lts, std::move(edges));

  out.signature = modulo_actors(n + 1, m);
  validate_signature(lts, out.signature);
  return out;
}

GeneratedModel gen_random(uint32_t n, uint32_t m, uint64_t seed, double bad_fraction,
                          uint32_t out_degree) {
  check_counts(n, m);
  if (n < out_degree + 1)
    fail(ErrorKind::usage, "need more than " + std::to_string(out_degree) + " states");
  if (bad_fraction <= 0.0 || bad_fraction >= 1.0)
    fail(ErrorKind::usage, "bad fraction must be inside (0, 1)");

  Rng rng(seed);
  GeneratedModel out;
  Lts& lts = out.lts;
  lts.num_states = n;
  lts.initial = 0;
  lts.is_bad.assign(n, 0);
  lts.actions = {"go"};
  lts.action_display = {"go"};

  uint32_t bad_count = std::max<uint32_t>(
      1, static_cast<uint32_t>(bad_fraction * static_cast<double>(n)));
  // Never the initial state; sample distinct indices from 1..n-1.
  {
    std::vector<uint32_t> pool(n - 1);
    std::iota(pool.begin(), pool.end(), 1);
    rng.shuffle(pool);
    for (uint32_t i = 0; i < bad_count && i < pool.size(); ++i) lts.is_bad[pool[i]] = 1;
  }

  std::vector<RawEdge> edges;
  std::vector<uint32_t> chosen;
  for (uint32_t s = 0; s < n; ++s) {
    if (lts.is_bad[s]) continue;
    // Distinct targets other than s itself.
    chosen.clear();
    while (chosen.size() < out_degree) {
      uint32_t t = static_cast<uint32_t>(rng.below(n - 1));
      if (t >= s) ++t;  // skip self
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
        chosen.push_back(t);
    }
    for (uint32_t t : chosen) edges.push_back({s, t, 0});
  }

  // The initial state must reach some bad state; add shortcuts until it does.
  auto bad_reachable = [&]() {
    std::vector<uint8_t> seen(n, 0);
    std::vector<uint32_t> stack = {lts.initial};
    seen[lts.initial] = 1;
    std::vector<std::vector<uint32_t>> succ(n);
    for (const RawEdge& e : edges)
      if (!lts.is_bad[e.src]) succ[e.src].push_back(e.dst);
    while (!stack.empty()) {
      uint32_t u = stack.back();
      stack.pop_back();
      if (lts.is_bad[u]) return true;
      for (uint32_t v : succ[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return false;
  };
  while (!bad_reachable()) {
    uint32_t src = static_cast<uint32_t>(rng.below(n));
    uint32_t dst = static_cast<uint32_t>(rng.below(n));
    if (lts.is_bad[src] || !lts.is_bad[dst]) continue;
    edges.push_back({src, dst, 0});
  }
  finalize_lts(lts, std::move(edges));

  // Seeded shuffle, then m near-equal slices.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  ResponsibilitySignature sig;
  for (uint32_t j = 0; j < m; ++j) {
    uint32_t lo = static_cast<uint32_t>(uint64_t{n} * j / m);
    uint32_t hi = static_cast<uint32_t>(uint64_t{n} * (j + 1) / m);
    sig.actor_names.push_back("a" + std::to_string(j));
    sig.actor_states.emplace_back(order.begin() + lo, order.begin() + hi);
  }
  out.signature = std::move(sig);
  validate_signature(lts, out.signature);
  return out;
}

GeneratedModel gen_tree(uint32_t n, uint32_t m, uint32_t leaf_period) {
  check_counts(n, m);
  if (n < 2) fail(ErrorKind::usage, "need at least two states");
  if (leaf_period < 1) fail(ErrorKind::usage, "leaf period must be positive");

  GeneratedModel out;
  Lts& lts = out.lts;
  lts.num_states = n;
  lts.initial = 0;
  lts.is_bad.assign(n, 0);
  lts.actions = {"left", "right", "stay"};
  lts.action_display = lts.actions;

  // Heap layout: children of i are 2i+1, 2i+2; leaves are the trailing block.
  uint32_t leaf_index = 0;
  std::vector<RawEdge> edges;
  for (uint32_t i = 0; i < n; ++i) {
    uint64_t l = uint64_t{2} * i + 1, r = uint64_t{2} * i + 2;
    if (l >= n) {
      if (leaf_index % leaf_period == leaf_period - 1) lts.is_bad[i] = 1;
      ++leaf_index;
      edges.push_back({i, i, 2});
      continue;
    }
    edges.push_back({i, static_cast<uint32_t>(l), 0});
    if (r < n) edges.push_back({i, static_cast<uint32_t>(r), 1});
  }
  finalize_lts(lts, std::move(edges));

  out.signature = chunk_actors(n, m);
  validate_signature(lts, out.signature);
  return out;
}

}  // namespace respo
