#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "respo/rational.hpp"

namespace respo {

// One analysed actor. Exactly one of `exact` / `sampled` is populated,
// matching the algorithm that produced the report.
struct ActorResult {
  std::string name;

  struct Exact {
    Rational value;
    // Switching-pair witness: the coalition C (as actor names) such that C
    // loses and C + this actor wins. Absent when the value is zero.
    std::optional<std::vector<std::string>> witness;
  };
  struct Sampled {
    double mean = 0.0;
    double half_width = 0.0;
    uint64_t samples = 0;
  };

  std::optional<Exact> exact;
  std::optional<Sampled> sampled;
};

struct ResponsibilityReport {
  std::string mode;       // "forward" | "backward"
  std::string algorithm;  // "exact" | "sample"
  std::vector<ActorResult> actors;
  int gamma_empty = 0;
  int gamma_full = 0;
  uint64_t coalitions_evaluated = 0;
  double wall_ms = 0.0;  // responsibility computation only; 0 when timing is off
  std::vector<std::string> warnings;
};

// Stable JSON rendering: fixed key order, actors in signature order,
// numerators/denominators as decimal strings (arbitrary precision). With
// timing disabled the exact-mode output is byte-identical across runs and
// thread counts.
std::string to_json(const ResponsibilityReport& report);

// Human-readable table plus a short summary block.
std::string to_table(const ResponsibilityReport& report);

}  // namespace respo
