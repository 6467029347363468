#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "respo/lts.hpp"
#include "respo/rational.hpp"
#include "respo/signature.hpp"

namespace respo {

inline constexpr int kDefaultMaxActors = 30;

// Memoizing coalition-value oracle. gamma(C) is 1 iff the coalition C plus the
// auxiliary part can keep the system safe (forward), or could have averted the
// given counterexample (backward). Thread-safe; per-solve scratch is pooled
// and stamped so repeated solves do not allocate.
class CoalitionOracle {
 public:
  enum class Mode { forward, backward };

  CoalitionOracle(const Lts& lts, const ResponsibilitySignature& sig, Mode mode,
                  const Counterexample* cex = nullptr);

  int gamma(uint64_t coalition) const;
  int actor_count() const { return n_actors_; }
  Mode mode() const { return mode_; }
  uint64_t full_coalition() const { return (uint64_t{1} << n_actors_) - 1; }
  // Number of distinct coalitions whose value has been computed.
  uint64_t evaluations() const { return evaluations_.load(std::memory_order_relaxed); }
  const ResponsibilitySignature& signature() const { return sig_; }

 private:
  struct Scratch {
    std::vector<uint32_t> attr_stamp, cnt_stamp, cnt, queue;
    uint32_t epoch = 0;
  };

  int solve_coalition(uint64_t coalition, Scratch& scratch) const;
  std::unique_ptr<Scratch> acquire_scratch() const;
  void release_scratch(std::unique_ptr<Scratch> s) const;

  const Lts& lts_;
  ResponsibilitySignature sig_;
  Mode mode_;
  int n_actors_;

  // Engraved single successor per state in backward mode, -1 when free.
  std::vector<int64_t> forced_;

  // Dense memo (3-state bytes) when the coalition space is small, hashed
  // beyond that. 0 = unknown, 1 = value 0, 2 = value 1.
  std::unique_ptr<std::atomic<uint8_t>[]> dense_;
  uint64_t dense_size_ = 0;
  mutable std::unordered_map<uint64_t, uint8_t> sparse_;
  mutable std::mutex sparse_mutex_;
  mutable std::atomic<uint64_t> evaluations_{0};

  mutable std::vector<std::unique_ptr<Scratch>> scratch_pool_;
  mutable std::mutex scratch_mutex_;
};

struct ExactShapley {
  std::vector<Rational> values;
  // Smallest switching coalition per actor, by size then numeric mask.
  std::vector<std::optional<uint64_t>> witnesses;
  int gamma_empty = 0;
  int gamma_full = 0;
  uint64_t coalitions = 0;
};

// Full-enumeration Shapley values; every coalition value is computed once and
// the result is independent of the thread count.
ExactShapley shapley_exact(const CoalitionOracle& oracle, int threads = 1,
                           int max_actors = kDefaultMaxActors);

struct SampledShapley {
  std::vector<double> means;
  std::vector<double> half_widths;  // 1.96 * sd / sqrt(samples)
  uint64_t samples = 0;
  int gamma_empty = 0;
  int gamma_full = 0;
  uint64_t coalitions = 0;
};

// Permutation sampling with antithetic pairing: one sample is the mean of the
// marginal vectors along a permutation and its reverse. Each permutation draws
// from its own seeded stream and partial sums are combined in a fixed chunk
// order, so results depend only on (samples, seed).
SampledShapley shapley_sampled(const CoalitionOracle& oracle, uint64_t samples,
                               uint64_t seed, int threads = 1);

// First switching coalition for the actor, sizes ascending, numeric mask order
// within a size; nullopt when the actor's value is zero.
std::optional<uint64_t> positivity_witness(const CoalitionOracle& oracle, int actor,
                                           int max_actors = kDefaultMaxActors);

struct ThresholdResult {
  Rational value;
  bool meets = false;
};

// Exact single-actor value compared against a rational threshold.
ThresholdResult threshold(const CoalitionOracle& oracle, int actor, const Rational& q,
                          int max_actors = kDefaultMaxActors);

}  // namespace respo
