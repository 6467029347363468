#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "respo/actors.hpp"
#include "respo/report.hpp"
#include "respo/responsibility.hpp"

namespace respo {

// End-to-end pipeline configuration. Model files are either guarded-command
// programs or transition-system exchange files; the kind is sniffed from the
// content (exchange files start with a `ts v1` header).
struct AnalysisConfig {
  std::string model_path;

  // Overrides the model's own safety property (with a warning on conflict).
  std::optional<std::string> property;

  std::string mode = "forward";  // forward | backward

  // Path to a counterexample file; backward mode derives one when absent.
  // With the module scheme the file is over the transformed system's
  // variables (including `active`); with the action scheme it is over the
  // original system and gets lifted.
  std::optional<std::string> counterexample;

  // module | value:<v1,...> | action | manual:<path> | file. Empty picks
  // `module` for programs and `file` for exchange input.
  std::string actors;

  std::string algorithm = "exact";  // exact | sample
  uint64_t samples = 10000;
  uint64_t seed = 1;

  uint64_t max_states = 10'000'000;
  int max_actors = kDefaultMaxActors;
  bool clamp = false;  // clamp out-of-range updates instead of failing
  ActionOrder action_order = ActionOrder::lexicographic;
  int threads = 0;     // 0 = all cores
  bool timing = true;  // false zeroes wall_ms for byte-stable output
  bool debug = false;  // progress notes on stderr
};

// Runs parse/import -> transform -> build -> signature -> (counterexample)
// -> Shapley and assembles the report. Raises Error; the caller maps kinds to
// exit codes.
ResponsibilityReport run_analysis(const AnalysisConfig& config);

struct TransformConfig {
  std::string model_path;
  std::optional<std::string> property;
  std::string kind;  // sched | action
  uint64_t max_states = 10'000'000;
  bool clamp = false;
  ActionOrder action_order = ActionOrder::lexicographic;
};

struct TransformResult {
  std::string text;  // program source (sched) or exchange text (action)
  std::vector<std::string> warnings;
};

// `sched` serializes the scheduler-transformed program; `action` builds the
// system, splits its action choices apart, and emits it with the per-action
// signature attached.
TransformResult run_transform(const TransformConfig& config);

// Parse/validate only; returns a short human-readable summary.
std::string run_check(const std::string& model_path);

}  // namespace respo
