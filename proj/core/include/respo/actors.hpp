#pragma once

#include <string>
#include <vector>

#include "respo/lts.hpp"
#include "respo/program.hpp"
#include "respo/signature.hpp"

namespace respo {

// Disjunction of the guards of the module's non-synchronizing commands; false
// when there are none. Enabledness of the module acting alone.
BoolPtr module_guard(const Program& p, int module_index);

// Conjunction over the modules containing the action of the disjunction of its
// guards there. Enabledness of the synchronized action.
BoolPtr action_guard(const Program& p, const std::string& action);

struct SchedulerProgram {
  Program program;
  // Meaning of each `active` value: 0 the scheduler itself, 1..n the modules,
  // n+1..n+m the synchronizing actions.
  std::vector<std::string> active_names;
};

// Serializes concurrency: adds an `active` variable and a scheduler module
// that picks which module or synchronizing action moves next; every
// non-synchronizing command is relabelled to its module's turn action.
// Raises Error(name_clash) when `active` or a generated name is taken.
SchedulerProgram with_scheduler(const Program& p);

// Actors of the scheduled system grouped by the `active` value; groups with no
// reachable state are dropped with a warning.
ResponsibilitySignature module_signature(const SchedulerProgram& sp, const Lts& lts,
                                         std::vector<std::string>* warnings = nullptr);

// Actors are the equivalence classes of states that agree on the given
// variables; named like "x=1,y=0", ordered by value tuple.
ResponsibilitySignature value_signature(const Lts& lts,
                                        const std::vector<std::string>& variables);

enum class ActionOrder { lexicographic, declared };

// Splits every state into a chain of per-action choice states, one commit
// state per action, and a final fall-through state, so that "which action
// happens" becomes a sequence of separate decisions.
struct SeparatedSystem {
  Lts lts;
  uint32_t orig_states = 0;
  std::vector<uint32_t> base;     // original state -> first index of its block
  std::vector<uint32_t> act_off;  // CSR offsets into act_ids per original state
  std::vector<uint32_t> act_ids;  // original action ids, in per-state order

  uint32_t degree(uint32_t s) const { return act_off[s + 1] - act_off[s]; }
  uint32_t choice_state(uint32_t s, uint32_t k) const { return base[s] + 2 * k; }
  uint32_t commit_state(uint32_t s, uint32_t k) const { return base[s] + 2 * k + 1; }
  uint32_t x_state(uint32_t s) const { return base[s] + 2 * degree(s); }
};

// Label on fall-through edges of the separated system.
inline constexpr const char* kSkipAction = "__skip";

SeparatedSystem action_separate(const Lts& lts,
                                ActionOrder order = ActionOrder::lexicographic);

// One actor per user action, holding all its choice states; commit states and
// completion-label choice states are auxiliary, fall-through states adversarial.
ResponsibilitySignature action_signature(const SeparatedSystem& sep);

// Maps a counterexample of the original system onto the separated one: walk
// the choice chain, commit on the action the step took, continue at the next
// block; the result ends in the first choice state of the final bad state.
Counterexample lift_counterexample(const SeparatedSystem& sep, const Lts& original,
                                   const Counterexample& cex);

}  // namespace respo
