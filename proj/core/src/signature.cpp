#include "respo/signature.hpp"

#include <algorithm>
#include <unordered_set>

#include "respo/errors.hpp"

namespace respo {

void validate_signature(const Lts& lts, ResponsibilitySignature& sig) {
  if (sig.actor_names.size() != sig.actor_states.size())
    fail(ErrorKind::invalid_signature, "actor names and state sets differ in number");
  if (sig.actor_names.size() > 63)
    fail(ErrorKind::too_many_actors,
         std::to_string(sig.actor_names.size()) + " actors; coalitions are 64-bit masks");

  std::unordered_set<std::string> names;
  for (const std::string& name : sig.actor_names) {
    if (name.empty())
      fail(ErrorKind::invalid_signature, "actor with an empty name");
    if (name == kIdleAction)
      fail(ErrorKind::invalid_signature, std::string("'") + kIdleAction + "' is reserved");
    if (!names.insert(name).second)
      fail(ErrorKind::invalid_signature, "duplicate actor name '" + name + "'");
  }

  std::vector<int16_t> owner(lts.num_states, INT16_MIN);
  auto claim = [&](std::vector<uint32_t>& states, int16_t code, const std::string& who) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    for (uint32_t s : states) {
      if (s >= lts.num_states)
        fail(ErrorKind::invalid_signature,
             "state " + std::to_string(s) + " out of range in " + who);
      if (owner[s] != INT16_MIN)
        fail(ErrorKind::invalid_signature,
             "state " + std::to_string(s) + " assigned to " + who + " and another class");
      owner[s] = code;
    }
  };

  for (size_t a = 0; a < sig.actor_states.size(); ++a) {
    if (sig.actor_states[a].empty())
      fail(ErrorKind::invalid_signature, "actor '" + sig.actor_names[a] + "' is empty");
    claim(sig.actor_states[a], static_cast<int16_t>(a), "actor '" + sig.actor_names[a] + "'");
  }
  claim(sig.aux_states, kOwnerAux, "the auxiliary set");
  claim(sig.adv_states, kOwnerAdv, "the adversarial set");

  for (uint32_t s = 0; s < lts.num_states; ++s)
    if (owner[s] == INT16_MIN)
      fail(ErrorKind::invalid_signature,
           "state " + std::to_string(s) + " (" + lts.describe_state(s) +
               ") belongs to no class");

  sig.owner.assign(owner.begin(), owner.end());
}

std::vector<uint32_t> flatten(const ResponsibilitySignature& sig, uint64_t coalition) {
  std::vector<uint32_t> out;
  for (size_t a = 0; a < sig.actor_states.size(); ++a)
    if (coalition >> a & 1)
      out.insert(out.end(), sig.actor_states[a].begin(), sig.actor_states[a].end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<uint8_t> safe_ownership(const ResponsibilitySignature& sig,
                                    uint64_t coalition) {
  std::vector<uint8_t> safe(sig.owner.size());
  for (size_t s = 0; s < sig.owner.size(); ++s) {
    int8_t o = sig.owner[s];
    safe[s] = (o == kOwnerAux || (o >= 0 && (coalition >> o & 1))) ? 1 : 0;
  }
  return safe;
}

}  // namespace

SafetyGame build_forward_game(const Lts& lts, const ResponsibilitySignature& sig,
                              uint64_t coalition) {
  SafetyGame g;
  g.num_states = lts.num_states;
  g.initial = lts.initial;
  g.safe_owned = safe_ownership(sig, coalition);
  g.is_bad = lts.is_bad;
  g.row_off = lts.row_off;
  g.col = lts.col;
  return g;
}

SafetyGame build_backward_game(const Lts& lts, const ResponsibilitySignature& sig,
                               const Counterexample& cex, uint64_t coalition) {
  validate_counterexample(lts, cex);
  SafetyGame g;
  g.num_states = lts.num_states;
  g.initial = lts.initial;
  g.safe_owned = safe_ownership(sig, coalition);
  g.is_bad = lts.is_bad;

  std::vector<int64_t> forced(lts.num_states, -1);
  for (size_t i = 0; i + 1 < cex.states.size(); ++i) {
    uint32_t u = cex.states[i];
    if (!g.safe_owned[u]) forced[u] = cex.states[i + 1];
  }

  g.row_off.assign(lts.num_states + 1, 0);
  for (uint32_t u = 0; u < lts.num_states; ++u) {
    uint32_t deg = forced[u] >= 0 ? 1 : lts.row_off[u + 1] - lts.row_off[u];
    g.row_off[u + 1] = g.row_off[u] + deg;
  }
  g.col.resize(g.row_off.back());
  for (uint32_t u = 0; u < lts.num_states; ++u) {
    if (forced[u] >= 0) {
      g.col[g.row_off[u]] = static_cast<uint32_t>(forced[u]);
    } else {
      std::copy(lts.col.begin() + lts.row_off[u], lts.col.begin() + lts.row_off[u + 1],
                g.col.begin() + g.row_off[u]);
    }
  }
  return g;
}

}  // namespace respo
