#include "support/oracles.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "respo/errors.hpp"

namespace respo::testing {

std::vector<char> fixpoint_attractor(uint32_t n,
                                     const std::vector<std::vector<uint32_t>>& succ,
                                     const std::vector<char>& safe_owned,
                                     const std::vector<char>& is_bad) {
  std::vector<char> attr(is_bad.begin(), is_bad.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t u = 0; u < n; ++u) {
      if (attr[u]) continue;
      bool in;
      if (safe_owned[u]) {
        in = !succ[u].empty();
        for (uint32_t v : succ[u])
          if (!attr[v]) {
            in = false;
            break;
          }
      } else {
        in = false;
        for (uint32_t v : succ[u])
          if (attr[v]) {
            in = true;
            break;
          }
      }
      if (in) {
        attr[u] = 1;
        changed = true;
      }
    }
  }
  return attr;
}

int fixpoint_gamma(const Lts& lts, const ResponsibilitySignature& sig,
                   uint64_t coalition, const Counterexample* cex) {
  uint32_t n = lts.num_states;
  std::vector<char> safe_owned(n, 0);
  for (uint32_t s = 0; s < n; ++s) {
    int8_t o = sig.owner[s];
    safe_owned[s] = o == kOwnerAux || (o >= 0 && (coalition >> o & 1));
  }

  std::vector<std::vector<uint32_t>> succ(n);
  for (uint32_t s = 0; s < n; ++s)
    for (uint32_t v : lts.successors(s)) succ[s].push_back(v);
  if (cex) {
    for (size_t i = 0; i + 1 < cex->states.size(); ++i) {
      uint32_t u = cex->states[i];
      if (!safe_owned[u]) succ[u] = {cex->states[i + 1]};
    }
  }
  for (uint32_t s = 0; s < n; ++s)
    if (succ[s].empty()) succ[s] = {s};

  std::vector<char> is_bad(lts.is_bad.begin(), lts.is_bad.end());
  std::vector<char> attr = fixpoint_attractor(n, succ, safe_owned, is_bad);
  return attr[lts.initial] ? 0 : 1;
}

std::vector<Rational> definition_shapley(const std::function<int(uint64_t)>& gamma,
                                         int n_actors) {
  BigInt n_fact = Rational::factorial(static_cast<unsigned>(n_actors));
  std::vector<Rational> out;
  for (int a = 0; a < n_actors; ++a) {
    Rational total(0);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n_actors); ++mask) {
      if (mask >> a & 1) continue;
      int diff = gamma(mask | (uint64_t{1} << a)) - gamma(mask);
      if (diff == 0) continue;
      int size = std::popcount(mask);
      BigInt weight = Rational::factorial(static_cast<unsigned>(size)) *
                      Rational::factorial(static_cast<unsigned>(n_actors - size - 1));
      total += Rational(weight * diff, n_fact);
    }
    out.push_back(total);
  }
  return out;
}

bool bad_reachable(const Lts& lts) {
  std::vector<char> seen(lts.num_states, 0);
  std::vector<uint32_t> queue{lts.initial};
  seen[lts.initial] = 1;
  while (!queue.empty()) {
    uint32_t u = queue.back();
    queue.pop_back();
    if (lts.is_bad[u]) return true;
    for (uint32_t v : lts.successors(u))
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  return false;
}

namespace {

long long clamp_value(long long v, long long lo, long long hi) {
  return std::max(lo, std::min(hi, v));
}

}  // namespace

NaiveReach naive_program_reach(const Program& p, bool clamp, size_t state_cap) {
  NaiveReach out;
  const auto& entries = p.vars.entries();
  std::vector<long long> init = p.initial_state();

  // Per action, the modules that carry it and their command indices.
  std::map<std::string, std::map<int, std::vector<int>>> by_action;
  for (size_t mi = 0; mi < p.modules.size(); ++mi)
    for (size_t ci = 0; ci < p.modules[mi].commands.size(); ++ci) {
      const Command& c = p.modules[mi].commands[ci];
      by_action[c.action][static_cast<int>(mi)].push_back(static_cast<int>(ci));
    }

  std::set<std::vector<long long>> seen{init};
  std::vector<std::vector<long long>> frontier{init};
  while (!frontier.empty()) {
    std::vector<long long> s = std::move(frontier.back());
    frontier.pop_back();
    if (p.safety_invariant && eval_bool(*p.safety_invariant, s)) {
      out.bad_found = true;
      continue;  // absorbing: not expanded
    }
    for (const auto& [action, mods] : by_action) {
      // One enabled command per carrying module, or the action is blocked.
      std::vector<std::vector<int>> choices;
      bool blocked = false;
      std::vector<int> mod_of;
      for (const auto& [mi, cmds] : mods) {
        std::vector<int> enabled;
        for (int ci : cmds)
          if (eval_bool(*p.modules[mi].commands[ci].guard, s)) enabled.push_back(ci);
        if (enabled.empty()) {
          blocked = true;
          break;
        }
        choices.push_back(std::move(enabled));
        mod_of.push_back(mi);
      }
      if (blocked) continue;
      std::vector<size_t> pick(choices.size(), 0);
      for (;;) {
        std::vector<long long> t = s;
        for (size_t k = 0; k < choices.size(); ++k) {
          const Command& c = p.modules[mod_of[k]].commands[choices[k][pick[k]]];
          for (const Assignment& up : c.updates) {
            long long v = eval_arith(*up.expr, s);
            const auto& e = entries[up.var_id];
            t[up.var_id] = clamp ? clamp_value(v, e.lo, e.hi) : v;
            if (!clamp && (v < e.lo || v > e.hi))
              fail(ErrorKind::update_out_of_range, "oracle: out of range");
          }
        }
        if (seen.insert(t).second) {
          if (seen.size() > state_cap)
            fail(ErrorKind::state_space_exceeded, "oracle: cap");
          frontier.push_back(t);
        }
        size_t k = 0;
        while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
  }
  out.states.assign(seen.begin(), seen.end());
  return out;
}

Lts random_lts(Rng& rng, uint32_t max_states, bool force_bad_reachable) {
  for (;;) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(max_states - 1));
    Lts lts;
    lts.num_states = n;
    lts.initial = 0;
    lts.is_bad.assign(n, 0);
    uint32_t bad_count = static_cast<uint32_t>(rng.below(1 + n / 4));
    for (uint32_t i = 0; i < bad_count; ++i)
      lts.is_bad[static_cast<uint32_t>(rng.below(n))] = 1;

    lts.actions = {"a", "b", "c"};
    lts.action_display = lts.actions;
    std::vector<RawEdge> edges;
    for (uint32_t s = 0; s < n; ++s) {
      uint32_t deg = 1 + static_cast<uint32_t>(rng.below(4));
      for (uint32_t k = 0; k < deg; ++k)
        edges.push_back({s, static_cast<uint32_t>(rng.below(n)),
                         static_cast<uint32_t>(rng.below(3))});
    }
    finalize_lts(lts, std::move(edges));
    if (!force_bad_reachable || bad_reachable(lts)) return lts;
  }
}

ResponsibilitySignature random_signature(Rng& rng, const Lts& lts, int max_actors,
                                         bool allow_aux, bool allow_adv) {
  for (;;) {
    int n_actors = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_actors)));
    bool use_aux = allow_aux && rng.below(2) == 1;
    bool use_adv = allow_adv && rng.below(2) == 1;
    int classes = n_actors + (use_aux ? 1 : 0) + (use_adv ? 1 : 0);

    ResponsibilitySignature sig;
    sig.actor_states.assign(static_cast<size_t>(n_actors), {});
    for (int a = 0; a < n_actors; ++a) sig.actor_names.push_back("p" + std::to_string(a));
    bool ok = true;
    for (uint32_t s = 0; s < lts.num_states; ++s) {
      int c = static_cast<int>(rng.below(static_cast<uint64_t>(classes)));
      if (c < n_actors)
        sig.actor_states[static_cast<size_t>(c)].push_back(s);
      else if (use_aux && c == n_actors)
        sig.aux_states.push_back(s);
      else
        sig.adv_states.push_back(s);
    }
    for (const auto& states : sig.actor_states)
      if (states.empty()) ok = false;
    if (!ok) continue;  // redraw rather than bias toward small actors
    validate_signature(lts, sig);
    return sig;
  }
}

std::string random_program_text(Rng& rng) {
  int n_modules = 1 + static_cast<int>(rng.below(3));
  std::ostringstream out;

  std::vector<std::string> vars;
  std::vector<long long> his;
  auto var_term = [&]() -> std::string {
    if (vars.empty() || rng.below(3) == 0) return std::to_string(rng.below(3));
    return vars[rng.below(vars.size())];
  };
  auto arith = [&]() -> std::string {
    std::string a = var_term();
    switch (rng.below(4)) {
      case 0: return a;
      case 1: return a + " + " + var_term();
      case 2: return a + " - " + var_term();
      default: return a + " * " + std::to_string(1 + rng.below(2));
    }
  };
  auto cmp = [&](const std::string& v, long long hi) -> std::string {
    const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
    return v + " " + ops[rng.below(6)] + " " + std::to_string(rng.below(hi + 1));
  };

  // Declare everything first so guards can mention any variable.
  struct Decl {
    std::string name;
    long long hi;
    long long init;
  };
  std::vector<std::vector<Decl>> decls(static_cast<size_t>(n_modules));
  for (int m = 0; m < n_modules; ++m) {
    int n_vars = 1 + static_cast<int>(rng.below(2));
    for (int v = 0; v < n_vars; ++v) {
      Decl d;
      d.name = "v" + std::to_string(m) + std::to_string(v);
      d.hi = 1 + static_cast<long long>(rng.below(3));
      d.init = static_cast<long long>(rng.below(static_cast<uint64_t>(d.hi) + 1));
      decls[static_cast<size_t>(m)].push_back(d);
      vars.push_back(d.name);
      his.push_back(d.hi);
    }
  }

  auto guard = [&]() -> std::string {
    size_t i = rng.below(vars.size());
    std::string g = cmp(vars[i], his[i]);
    if (rng.below(3) == 0) {
      size_t j = rng.below(vars.size());
      g += rng.below(2) ? " & " : " | ";
      g += cmp(vars[j], his[j]);
    }
    return g;
  };

  size_t li = rng.below(vars.size());
  out << "lightning = " << cmp(vars[li], his[li]) << ";\n\n";

  for (int m = 0; m < n_modules; ++m) {
    out << "module M" << m << "\n";
    for (const Decl& d : decls[static_cast<size_t>(m)])
      out << "  " << d.name << " : [0.." << d.hi << "] init " << d.init << ";\n";
    int n_cmds = 1 + static_cast<int>(rng.below(3));
    for (int c = 0; c < n_cmds; ++c) {
      // Mix of local commands and a shared action "sync".
      std::string action = rng.below(3) == 0 ? "sync" : "";
      out << "  [" << action << "] " << guard() << " -> ";
      const auto& own = decls[static_cast<size_t>(m)];
      int n_ups = static_cast<int>(rng.below(static_cast<uint64_t>(own.size()) + 1));
      if (n_ups == 0) {
        out << "true;\n";
        continue;
      }
      for (int u = 0; u < n_ups; ++u) {
        if (u) out << " & ";
        out << own[static_cast<size_t>(u)].name << " := " << arith();
      }
      out << ";\n";
    }
    out << "endmodule\n\n";
  }
  return out.str();
}

CommandResult run_command(const std::string& command_line) {
  CommandResult result;
  FILE* pipe = popen(command_line.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace respo::testing
