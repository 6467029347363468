#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "respo/game.hpp"
#include "respo/lts.hpp"

namespace respo {

// Owner codes used once a signature is validated against a system.
inline constexpr int8_t kOwnerAux = -1;
inline constexpr int8_t kOwnerAdv = -2;

// Partition of the state space into named actors, an auxiliary part that
// always cooperates, and an adversarial part that never does.
struct ResponsibilitySignature {
  std::vector<std::string> actor_names;
  std::vector<std::vector<uint32_t>> actor_states;
  std::vector<uint32_t> aux_states;
  std::vector<uint32_t> adv_states;

  // Per-state owner code, filled by validate_signature.
  std::vector<int8_t> owner;

  int actor_count() const { return static_cast<int>(actor_names.size()); }
};

// Sorts the classes, checks that they partition the state space exactly, that
// no actor is empty and names are unique, and fills `owner`. At most 63 actors
// (coalitions are bitmasks). Raises Error(invalid_signature) or
// Error(too_many_actors).
void validate_signature(const Lts& lts, ResponsibilitySignature& sig);

// Union of the coalition's actor state sets, sorted.
std::vector<uint32_t> flatten(const ResponsibilitySignature& sig, uint64_t coalition);

// Game in which the coalition and the auxiliary part play Safe and everyone
// else plays Reach; Safe wins iff the play never reaches a bad state.
SafetyGame build_forward_game(const Lts& lts, const ResponsibilitySignature& sig,
                              uint64_t coalition);

// Same arena, but every non-final counterexample state outside the coalition
// and the auxiliary part has its edges engraved down to the single transition
// the counterexample took.
SafetyGame build_backward_game(const Lts& lts, const ResponsibilitySignature& sig,
                               const Counterexample& cex, uint64_t coalition);

}  // namespace respo
