#include "respo/actors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "respo/errors.hpp"

namespace respo {

namespace {

bool is_sync(const Program& p, const std::string& action) {
  return p.modules_with_action(action).size() >= 2;
}

BoolPtr disjoin(const std::vector<BoolPtr>& parts) {
  if (parts.empty()) return BoolExpr::constant(false);
  BoolPtr out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i)
    out = BoolExpr::binary(BoolOp::disj, out, parts[i]);
  return out;
}

}  // namespace

BoolPtr module_guard(const Program& p, int module_index) {
  if (module_index < 0 || module_index >= static_cast<int>(p.modules.size()))
    fail(ErrorKind::usage, "module index out of range");
  std::vector<BoolPtr> guards;
  for (const Command& c : p.modules[static_cast<size_t>(module_index)].commands)
    if (!is_sync(p, c.action)) guards.push_back(c.guard);
  return disjoin(guards);
}

BoolPtr action_guard(const Program& p, const std::string& action) {
  std::vector<int> holders = p.modules_with_action(action);
  if (holders.empty()) fail(ErrorKind::usage, "no module contains action '" + action + "'");
  BoolPtr out;
  for (int mi : holders) {
    std::vector<BoolPtr> guards;
    for (const Command& c : p.modules[static_cast<size_t>(mi)].commands)
      if (c.action == action) guards.push_back(c.guard);
    BoolPtr part = disjoin(guards);
    out = out ? BoolExpr::binary(BoolOp::conj, out, part) : part;
  }
  return out;
}

SchedulerProgram with_scheduler(const Program& p) {
  if (!p.validated) fail(ErrorKind::usage, "program must be validated");
  if (p.vars.find("active") >= 0)
    fail(ErrorKind::name_clash, "variable 'active' is reserved by the scheduler transform");

  size_t n = p.modules.size();
  std::vector<std::string> sync = p.sync_actions();
  size_t m = sync.size();

  std::unordered_set<std::string> taken(p.actions.begin(), p.actions.end());
  for (const Module& mod : p.modules) taken.insert(mod.name);
  auto claim_name = [&](const std::string& name) {
    if (!taken.insert(name).second)
      fail(ErrorKind::name_clash, "generated name '" + name + "' is already in use");
  };

  SchedulerProgram sp;
  sp.program.safety_invariant = p.safety_invariant;
  sp.active_names.push_back("scheduler");

  std::vector<std::string> turn_action(n), choose_action(n);
  for (size_t i = 0; i < n; ++i) {
    turn_action[i] = "__act_" + p.modules[i].name;
    choose_action[i] = "__choose_" + p.modules[i].name;
    claim_name(turn_action[i]);
    claim_name(choose_action[i]);
    sp.active_names.push_back(p.modules[i].name);
  }
  std::vector<std::string> choose_sync(m);
  for (size_t j = 0; j < m; ++j) {
    choose_sync[j] = "__choose_" + sync[j];
    claim_name(choose_sync[j]);
    sp.active_names.push_back(sync[j]);
  }
  claim_name("__sched");

  // Copies of the original modules with non-synchronizing commands relabelled
  // to the module's turn action.
  for (size_t i = 0; i < n; ++i) {
    Module mod = p.modules[i];
    for (Command& c : mod.commands) {
      if (!is_sync(p, c.action)) {
        c.action = turn_action[i];
        c.synthetic_action = false;
      }
    }
    sp.program.modules.push_back(std::move(mod));
  }

  auto active_var = [&](SourcePos pos = {}) { return ArithExpr::variable("active", pos); };
  auto active_eq = [&](long long v) {
    return BoolExpr::comparison(CmpOp::eq, active_var(), ArithExpr::constant(v));
  };
  auto set_active = [&](long long v) {
    Assignment a;
    a.var = "active";
    a.expr = ArithExpr::constant(v);
    return a;
  };

  Module sched;
  sched.name = "__sched";
  sched.decls.push_back({"active", 0, static_cast<long long>(n + m), 0, {}});
  for (size_t i = 0; i < n; ++i) {
    Command choose;
    choose.action = choose_action[i];
    choose.guard = BoolExpr::binary(BoolOp::conj, active_eq(0),
                                    module_guard(p, static_cast<int>(i)));
    choose.updates.push_back(set_active(static_cast<long long>(i + 1)));
    sched.commands.push_back(std::move(choose));

    Command turn;
    turn.action = turn_action[i];
    turn.guard = active_eq(static_cast<long long>(i + 1));
    turn.updates.push_back(set_active(0));
    sched.commands.push_back(std::move(turn));
  }
  for (size_t j = 0; j < m; ++j) {
    Command choose;
    choose.action = choose_sync[j];
    choose.guard = BoolExpr::binary(BoolOp::conj, active_eq(0), action_guard(p, sync[j]));
    choose.updates.push_back(set_active(static_cast<long long>(n + 1 + j)));
    sched.commands.push_back(std::move(choose));

    Command turn;
    turn.action = sync[j];
    turn.guard = active_eq(static_cast<long long>(n + 1 + j));
    turn.updates.push_back(set_active(0));
    sched.commands.push_back(std::move(turn));
  }
  sp.program.modules.push_back(std::move(sched));

  sp.program.validate();
  return sp;
}

ResponsibilitySignature module_signature(const SchedulerProgram& sp, const Lts& lts,
                                         std::vector<std::string>* warnings) {
  int active = -1;
  for (size_t v = 0; v < lts.var_names.size(); ++v)
    if (lts.var_names[v] == "active") active = static_cast<int>(v);
  if (active < 0)
    fail(ErrorKind::usage, "system has no 'active' variable; not a scheduled program");

  std::map<long long, std::vector<uint32_t>> groups;
  for (uint32_t s = 0; s < lts.num_states; ++s)
    groups[lts.state(s)[static_cast<size_t>(active)]].push_back(s);

  ResponsibilitySignature sig;
  std::unordered_set<std::string> used;
  for (size_t v = 0; v < sp.active_names.size(); ++v) {
    auto it = groups.find(static_cast<long long>(v));
    if (it == groups.end()) {
      if (warnings)
        warnings->push_back("actor '" + sp.active_names[v] +
                            "' has no reachable states and was dropped");
      continue;
    }
    std::string name = sp.active_names[v];
    while (!used.insert(name).second) name += "_";
    sig.actor_names.push_back(name);
    sig.actor_states.push_back(it->second);
  }
  validate_signature(lts, sig);
  return sig;
}

ResponsibilitySignature value_signature(const Lts& lts,
                                        const std::vector<std::string>& variables) {
  if (variables.empty())
    fail(ErrorKind::usage, "the value scheme needs at least one variable");
  std::vector<size_t> ids;
  for (const std::string& v : variables) {
    auto it = std::find(lts.var_names.begin(), lts.var_names.end(), v);
    if (it == lts.var_names.end())
      fail(ErrorKind::unknown_variable, "variable '" + v + "'");
    ids.push_back(static_cast<size_t>(it - lts.var_names.begin()));
  }

  std::map<std::vector<long long>, std::vector<uint32_t>> groups;
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    std::vector<long long> key;
    key.reserve(ids.size());
    for (size_t v : ids) key.push_back(lts.state(s)[v]);
    groups[std::move(key)].push_back(s);
  }

  ResponsibilitySignature sig;
  for (auto& [key, states] : groups) {
    std::string name;
    for (size_t i = 0; i < key.size(); ++i) {
      if (i) name += ",";
      name += variables[i] + "=" + std::to_string(key[i]);
    }
    sig.actor_names.push_back(std::move(name));
    sig.actor_states.push_back(std::move(states));
  }
  validate_signature(lts, sig);
  return sig;
}

SeparatedSystem action_separate(const Lts& lts, ActionOrder order) {
  SeparatedSystem sep;
  sep.orig_states = lts.num_states;

  // Rank for lexicographic action ordering.
  std::vector<uint32_t> name_rank(lts.actions.size());
  {
    std::vector<uint32_t> by_name(lts.actions.size());
    std::iota(by_name.begin(), by_name.end(), 0);
    std::sort(by_name.begin(), by_name.end(), [&](uint32_t a, uint32_t b) {
      return lts.actions[a] < lts.actions[b];
    });
    for (uint32_t r = 0; r < by_name.size(); ++r) name_rank[by_name[r]] = r;
  }

  sep.act_off.assign(lts.num_states + 1, 0);
  sep.base.assign(lts.num_states, 0);
  uint32_t next_index = 0;
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    std::vector<uint32_t> acts;
    for (uint32_t e = lts.row_off[s]; e < lts.row_off[s + 1]; ++e)
      acts.push_back(lts.edge_action[e]);
    std::sort(acts.begin(), acts.end(), [&](uint32_t a, uint32_t b) {
      return order == ActionOrder::lexicographic ? name_rank[a] < name_rank[b] : a < b;
    });
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    sep.base[s] = next_index;
    sep.act_off[s + 1] = sep.act_off[s] + static_cast<uint32_t>(acts.size());
    sep.act_ids.insert(sep.act_ids.end(), acts.begin(), acts.end());
    next_index += 2 * static_cast<uint32_t>(acts.size()) + 1;
  }

  Lts& out = sep.lts;
  out.num_states = next_index;
  out.initial = sep.choice_state(lts.initial, 0);
  out.is_bad.assign(next_index, 0);
  for (uint32_t b : lts.bad) out.is_bad[sep.choice_state(b, 0)] = 1;
  out.actions = lts.actions;
  out.action_display = lts.action_display;
  uint32_t skip = static_cast<uint32_t>(out.actions.size());
  out.actions.push_back(kSkipAction);
  out.action_display.push_back(kSkipAction);

  std::vector<RawEdge> edges;
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    uint32_t deg = sep.degree(s);
    for (uint32_t k = 0; k < deg; ++k) {
      uint32_t aid = sep.act_ids[sep.act_off[s] + k];
      uint32_t choice = sep.choice_state(s, k);
      uint32_t commit = sep.commit_state(s, k);
      uint32_t next = (k + 1 < deg) ? sep.choice_state(s, k + 1) : sep.x_state(s);
      edges.push_back({choice, commit, aid});
      edges.push_back({choice, next, skip});
      edges.push_back({commit, next, skip});
      for (uint32_t e = lts.row_off[s]; e < lts.row_off[s + 1]; ++e)
        if (lts.edge_action[e] == aid)
          edges.push_back({commit, sep.choice_state(lts.col[e], 0), aid});
    }
    for (uint32_t e = lts.row_off[s]; e < lts.row_off[s + 1]; ++e)
      edges.push_back({sep.x_state(s), sep.choice_state(lts.col[e], 0), lts.edge_action[e]});
  }
  finalize_lts(out, std::move(edges));
  return sep;
}

ResponsibilitySignature action_signature(const SeparatedSystem& sep) {
  // Actors keyed by original action id; completion labels go to the auxiliary
  // part since their regions admit no real choice.
  std::map<std::string, uint32_t> actor_of_name;
  std::vector<uint32_t> actor_action;
  for (uint32_t s = 0; s < sep.orig_states; ++s) {
    for (uint32_t k = 0; k < sep.degree(s); ++k) {
      uint32_t aid = sep.act_ids[sep.act_off[s] + k];
      if (sep.lts.actions[aid] == kIdleAction) continue;
      actor_of_name.emplace(sep.lts.actions[aid], aid);
    }
  }

  ResponsibilitySignature sig;
  std::unordered_map<uint32_t, size_t> actor_index;
  std::unordered_set<std::string> used;
  for (auto& [raw, aid] : actor_of_name) {
    std::string name = sep.lts.action_display[aid];
    if (!used.insert(name).second) {
      name = raw;
      used.insert(name);
    }
    actor_index[aid] = sig.actor_names.size();
    sig.actor_names.push_back(name);
    sig.actor_states.emplace_back();
  }

  for (uint32_t s = 0; s < sep.orig_states; ++s) {
    uint32_t deg = sep.degree(s);
    for (uint32_t k = 0; k < deg; ++k) {
      uint32_t aid = sep.act_ids[sep.act_off[s] + k];
      uint32_t choice = sep.choice_state(s, k);
      if (sep.lts.actions[aid] == kIdleAction) {
        sig.aux_states.push_back(choice);
      } else {
        sig.actor_states[actor_index[aid]].push_back(choice);
      }
      sig.aux_states.push_back(sep.commit_state(s, k));
    }
    sig.adv_states.push_back(sep.x_state(s));
  }
  validate_signature(sep.lts, sig);
  return sig;
}

Counterexample lift_counterexample(const SeparatedSystem& sep, const Lts& original,
                                   const Counterexample& cex) {
  validate_counterexample(original, cex);
  Counterexample out;
  for (size_t i = 0; i + 1 < cex.states.size(); ++i) {
    uint32_t s = cex.states[i], t = cex.states[i + 1];
    uint32_t aid = UINT32_MAX;
    for (uint32_t e = original.row_off[s]; e < original.row_off[s + 1]; ++e) {
      if (original.col[e] == t) {
        aid = original.edge_action[e];
        break;
      }
    }
    uint32_t deg = sep.degree(s);
    uint32_t pos = UINT32_MAX;
    for (uint32_t k = 0; k < deg; ++k) {
      out.states.push_back(sep.choice_state(s, k));
      if (sep.act_ids[sep.act_off[s] + k] == aid) {
        pos = k;
        break;
      }
    }
    if (pos == UINT32_MAX)
      fail(ErrorKind::invalid_counterexample, "step has no matching action");
    out.states.push_back(sep.commit_state(s, pos));
  }
  out.states.push_back(sep.choice_state(cex.states.back(), 0));
  return out;
}

}  // namespace respo
