#include "respo/lts.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "respo/errors.hpp"

namespace respo {

namespace {

constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max();

struct VecHash {
  size_t operator()(const std::vector<long long>& v) const {
    size_t h = 0xcbf29ce484222325ULL;
    for (long long x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

int Lts::action_id(const std::string& name) const {
  auto it = std::find(actions.begin(), actions.end(), name);
  return it == actions.end() ? -1 : static_cast<int>(it - actions.begin());
}

int64_t Lts::find_state(std::span<const long long> values) const {
  if (num_vars == 0 || values.size() != num_vars) return -1;
  // States are sorted lexicographically by assignment vector.
  uint32_t lo = 0, hi = num_states;
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    auto s = state(mid);
    if (std::lexicographical_compare(s.begin(), s.end(), values.begin(), values.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < num_states) {
    auto s = state(lo);
    if (std::equal(s.begin(), s.end(), values.begin(), values.end()))
      return static_cast<int64_t>(lo);
  }
  return -1;
}

std::string Lts::describe_state(uint32_t i) const {
  if (num_vars == 0) return "state " + std::to_string(i);
  std::string out;
  auto s = state(i);
  for (uint32_t v = 0; v < num_vars; ++v) {
    if (v) out += " & ";
    out += var_names[v] + "=" + std::to_string(s[v]);
  }
  return out;
}

void finalize_lts(Lts& lts, std::vector<RawEdge> edges) {
  uint32_t n = lts.num_states;

  lts.bad.clear();
  for (uint32_t i = 0; i < n; ++i)
    if (lts.is_bad[i]) lts.bad.push_back(i);

  // Bad states are absorbing: drop outgoing edges, keep self-loops (dropping
  // and re-adding a loop would relabel it and spoil lossless round-trips).
  size_t kept = 0;
  for (const RawEdge& e : edges) {
    if (lts.is_bad[e.src] && e.src != e.dst) {
      ++lts.bad_edges_dropped;
      continue;
    }
    edges[kept++] = e;
  }
  edges.resize(kept);

  int idle = lts.action_id(kIdleAction);
  auto idle_id = [&]() -> uint32_t {
    if (idle < 0) {
      idle = static_cast<int>(lts.actions.size());
      lts.actions.push_back(kIdleAction);
      lts.action_display.push_back(kIdleAction);
    }
    return static_cast<uint32_t>(idle);
  };

  std::vector<uint8_t> has_out(n, 0);
  for (const RawEdge& e : edges) has_out[e.src] = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (!has_out[i]) {
      edges.push_back({i, i, idle_id()});
      if (!lts.is_bad[i]) ++lts.deadlock_completions;
    }
  }

  // Rank actions by name so duplicate (src, dst) edges keep the smallest label.
  std::vector<uint32_t> name_rank(lts.actions.size());
  {
    std::vector<uint32_t> order(lts.actions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return lts.actions[a] < lts.actions[b];
    });
    for (uint32_t r = 0; r < order.size(); ++r) name_rank[order[r]] = r;
  }

  std::sort(edges.begin(), edges.end(), [&](const RawEdge& a, const RawEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return name_rank[a.action] < name_rank[b.action];
  });
  size_t out = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (out > 0 && edges[out - 1].src == edges[i].src && edges[out - 1].dst == edges[i].dst)
      continue;
    edges[out++] = edges[i];
  }
  edges.resize(out);

  lts.row_off.assign(n + 1, 0);
  lts.col.resize(edges.size());
  lts.edge_action.resize(edges.size());
  for (const RawEdge& e : edges) ++lts.row_off[e.src + 1];
  for (uint32_t i = 0; i < n; ++i) lts.row_off[i + 1] += lts.row_off[i];
  for (size_t i = 0; i < edges.size(); ++i) {
    lts.col[i] = edges[i].dst;
    lts.edge_action[i] = edges[i].action;
  }

  lts.rrow_off.assign(n + 1, 0);
  lts.rcol.resize(edges.size());
  for (const RawEdge& e : edges) ++lts.rrow_off[e.dst + 1];
  for (uint32_t i = 0; i < n; ++i) lts.rrow_off[i + 1] += lts.rrow_off[i];
  std::vector<uint32_t> cursor(lts.rrow_off.begin(), lts.rrow_off.end() - 1);
  for (const RawEdge& e : edges) lts.rcol[cursor[e.dst]++] = e.src;
}

std::vector<Selection> enabled_selections(const Program& p,
                                          std::span<const long long> state) {
  std::vector<Selection> out;
  for (size_t ai = 0; ai < p.actions.size(); ++ai) {
    const std::string& action = p.actions[ai];
    // Enabled commands for this action, grouped per module containing it.
    std::vector<std::vector<int>> enabled;
    std::vector<int> module_of;
    bool blocked = false;
    for (size_t mi = 0; mi < p.modules.size() && !blocked; ++mi) {
      const Module& m = p.modules[mi];
      bool contains = false;
      std::vector<int> cmds;
      for (size_t ci = 0; ci < m.commands.size(); ++ci) {
        if (m.commands[ci].action != action) continue;
        contains = true;
        if (eval_bool(*m.commands[ci].guard, state)) cmds.push_back(static_cast<int>(ci));
      }
      if (!contains) continue;
      if (cmds.empty()) {
        blocked = true;
        break;
      }
      enabled.push_back(std::move(cmds));
      module_of.push_back(static_cast<int>(mi));
    }
    if (blocked || enabled.empty()) continue;

    // Cross product over the per-module choices, odometer order.
    std::vector<size_t> idx(enabled.size(), 0);
    bool done = false;
    while (!done) {
      Selection sel;
      sel.action_id = static_cast<int>(ai);
      for (size_t k = 0; k < enabled.size(); ++k)
        sel.commands.emplace_back(module_of[k], enabled[k][idx[k]]);
      out.push_back(std::move(sel));
      size_t k = enabled.size();
      for (;;) {
        if (k == 0) {
          done = true;
          break;
        }
        --k;
        if (++idx[k] < enabled[k].size()) break;
        idx[k] = 0;
      }
    }
  }
  return out;
}

std::vector<long long> apply_selection(const Program& p, const Selection& sel,
                                       std::span<const long long> state,
                                       const BuildOptions& opts) {
  std::vector<long long> next(state.begin(), state.end());
  for (auto [mi, ci] : sel.commands) {
    const Command& cmd = p.modules[static_cast<size_t>(mi)].commands[static_cast<size_t>(ci)];
    for (const Assignment& a : cmd.updates) {
      long long v = eval_arith(*a.expr, state);
      const auto& decl = p.vars[a.var_id];
      if (v < decl.lo || v > decl.hi) {
        if (opts.clamp) {
          v = v < decl.lo ? decl.lo : decl.hi;
        } else {
          fail(ErrorKind::update_out_of_range,
               "'" + a.var + "' := " + std::to_string(v) + " outside [" +
                   std::to_string(decl.lo) + ".." + std::to_string(decl.hi) + "]",
               a.pos.line, a.pos.column);
        }
      }
      next[static_cast<size_t>(a.var_id)] = v;
    }
  }
  return next;
}

Lts build_ts(const Program& p, const BuildOptions& opts) {
  if (!p.validated) fail(ErrorKind::usage, "program must be validated");
  if (!p.safety_invariant)
    fail(ErrorKind::usage, "no safety invariant: give one in the model or via --property");

  std::vector<std::vector<long long>> states;
  std::unordered_map<std::vector<long long>, uint32_t, VecHash> index;
  std::deque<uint32_t> frontier;
  std::vector<uint8_t> bad_flags;

  auto intern = [&](std::vector<long long> s) -> uint32_t {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (states.size() >= opts.max_states)
      fail(ErrorKind::state_space_exceeded,
           "more than " + std::to_string(opts.max_states) +
               " reachable states; raise --max-states or RESPO_MAX_STATES");
    uint32_t id = static_cast<uint32_t>(states.size());
    bool bad = eval_bool(*p.safety_invariant, s);
    states.push_back(std::move(s));
    index.emplace(states.back(), id);
    bad_flags.push_back(bad ? 1 : 0);
    if (!bad) frontier.push_back(id);
    return id;
  };

  struct TmpEdge {
    uint32_t src, dst;
    int action;
  };
  std::vector<TmpEdge> edges;

  intern(p.initial_state());
  while (!frontier.empty()) {
    uint32_t src = frontier.front();
    frontier.pop_front();
    std::vector<long long> current = states[src];  // intern may reallocate
    for (const Selection& sel : enabled_selections(p, current)) {
      uint32_t dst = intern(apply_selection(p, sel, current, opts));
      edges.push_back({src, dst, sel.action_id});
    }
  }

  // Renumber so state indices follow the lexicographic order of assignments.
  uint32_t n = static_cast<uint32_t>(states.size());
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return states[a] < states[b];
  });
  std::vector<uint32_t> rank(n);
  for (uint32_t i = 0; i < n; ++i) rank[order[i]] = i;

  Lts lts;
  lts.num_states = n;
  lts.initial = rank[0];  // state 0 was the initial valuation
  lts.num_vars = static_cast<uint32_t>(p.vars.size());
  for (const auto& v : p.vars.entries()) lts.var_names.push_back(v.name);
  lts.state_values.resize(static_cast<size_t>(n) * lts.num_vars);
  lts.is_bad.assign(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    std::copy(states[order[i]].begin(), states[order[i]].end(),
              lts.state_values.begin() + static_cast<size_t>(i) * lts.num_vars);
    lts.is_bad[i] = bad_flags[order[i]];
  }
  lts.actions = p.actions;
  for (const std::string& a : p.actions) lts.action_display.push_back(p.display_action(a));

  std::vector<RawEdge> raw;
  raw.reserve(edges.size());
  for (const TmpEdge& e : edges)
    raw.push_back({rank[e.src], rank[e.dst], static_cast<uint32_t>(e.action)});
  finalize_lts(lts, std::move(raw));
  return lts;
}

std::optional<Counterexample> find_counterexample(const Lts& lts) {
  // Multi-source backward BFS from bad gives distances; then a forward walk
  // that always takes the smallest-index successor one step closer yields the
  // lexicographically smallest shortest path.
  std::vector<uint32_t> dist(lts.num_states, kInf);
  std::deque<uint32_t> queue;
  for (uint32_t b : lts.bad) {
    dist[b] = 0;
    queue.push_back(b);
  }
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    for (uint32_t u : lts.predecessors(v)) {
      if (dist[u] == kInf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[lts.initial] == kInf) return std::nullopt;

  Counterexample cex;
  uint32_t cur = lts.initial;
  cex.states.push_back(cur);
  while (!lts.is_bad[cur]) {
    uint32_t chosen = kInf;
    for (uint32_t next : lts.successors(cur)) {  // successors sorted ascending
      if (dist[next] != kInf && dist[next] + 1 == dist[cur]) {
        chosen = next;
        break;
      }
    }
    assert(chosen != kInf);
    cur = chosen;
    cex.states.push_back(cur);
  }
  return cex;
}

void validate_counterexample(const Lts& lts, const Counterexample& cex) {
  const auto& pi = cex.states;
  if (pi.empty()) fail(ErrorKind::invalid_counterexample, "empty path");
  for (uint32_t s : pi)
    if (s >= lts.num_states)
      fail(ErrorKind::invalid_counterexample,
           "state " + std::to_string(s) + " out of range");
  if (pi.front() != lts.initial)
    fail(ErrorKind::invalid_counterexample, "path does not start at the initial state");
  for (size_t i = 0; i + 1 < pi.size(); ++i) {
    auto succ = lts.successors(pi[i]);
    if (!std::binary_search(succ.begin(), succ.end(), pi[i + 1]))
      fail(ErrorKind::invalid_counterexample,
           "no transition from " + lts.describe_state(pi[i]) + " to " +
               lts.describe_state(pi[i + 1]) + " (step " + std::to_string(i) + ")");
  }
  std::vector<uint32_t> sorted(pi);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::invalid_counterexample, "path repeats a state");
  if (!lts.is_bad[pi.back()])
    fail(ErrorKind::invalid_counterexample, "path does not end in a bad state");
}

}  // namespace respo
