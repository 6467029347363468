#include "respo/responsibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "respo/errors.hpp"
#include "respo/rng.hpp"

namespace respo {

namespace {

constexpr int kDenseCapBits = 26;  // 64 MiB memo table at most

void check_actor_cap(int n, int max_actors) {
  if (n > max_actors)
    fail(ErrorKind::too_many_actors,
         std::to_string(n) + " actors exceed the cap of " + std::to_string(max_actors) +
             "; use --algorithm sample or raise --max-actors");
}

// Inserts a zero bit at `at`, mapping a compact coalition over the remaining
// actors to a full mask. Monotone, so enumeration order is preserved.
uint64_t expand_around(uint64_t compact, int at) {
  uint64_t low = compact & ((uint64_t{1} << at) - 1);
  uint64_t high = compact >> at;
  return low | (high << (at + 1));
}

// Next mask with the same popcount (Gosper); caller bounds the range.
uint64_t next_same_popcount(uint64_t v) {
  uint64_t c = v & -v;
  uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

CoalitionOracle::CoalitionOracle(const Lts& lts, const ResponsibilitySignature& sig,
                                 Mode mode, const Counterexample* cex)
    : lts_(lts), sig_(sig), mode_(mode), n_actors_(sig.actor_count()) {
  if (sig_.owner.size() != lts.num_states)
    fail(ErrorKind::usage, "signature was not validated against this system");

  forced_.assign(lts.num_states, -1);
  if (mode_ == Mode::backward) {
    if (cex == nullptr)
      fail(ErrorKind::usage, "backward mode needs a counterexample");
    validate_counterexample(lts, *cex);
    for (size_t i = 0; i + 1 < cex->states.size(); ++i)
      forced_[cex->states[i]] = cex->states[i + 1];
  }

  if (n_actors_ <= kDenseCapBits) {
    dense_size_ = uint64_t{1} << n_actors_;
    dense_.reset(new std::atomic<uint8_t>[dense_size_]());
  }
}

int CoalitionOracle::gamma(uint64_t coalition) const {
  if (dense_) {
    uint8_t known = dense_[coalition].load(std::memory_order_relaxed);
    if (known) return known - 1;
  } else {
    std::lock_guard<std::mutex> lock(sparse_mutex_);
    auto it = sparse_.find(coalition);
    if (it != sparse_.end()) return it->second;
  }

  auto scratch = acquire_scratch();
  int value = solve_coalition(coalition, *scratch);
  release_scratch(std::move(scratch));

  if (dense_) {
    uint8_t prev = dense_[coalition].exchange(static_cast<uint8_t>(value + 1),
                                              std::memory_order_relaxed);
    if (prev == 0) evaluations_.fetch_add(1, std::memory_order_relaxed);
  } else {
    std::lock_guard<std::mutex> lock(sparse_mutex_);
    auto [it, inserted] = sparse_.emplace(coalition, static_cast<uint8_t>(value));
    if (inserted) evaluations_.fetch_add(1, std::memory_order_relaxed);
    value = it->second;
  }
  return value;
}

int CoalitionOracle::solve_coalition(uint64_t coalition, Scratch& scratch) const {
  const uint32_t n = lts_.num_states;
  const uint32_t epoch = ++scratch.epoch;
  auto& attr = scratch.attr_stamp;
  auto& cnt_stamp = scratch.cnt_stamp;
  auto& cnt = scratch.cnt;
  auto& queue = scratch.queue;
  queue.clear();

  const int8_t* owner = sig_.owner.data();
  auto is_safe = [&](uint32_t u) {
    int8_t o = owner[u];
    return o == kOwnerAux || (o >= 0 && (coalition >> o & 1));
  };

  const uint32_t init = lts_.initial;
  for (uint32_t b : lts_.bad) {
    attr[b] = epoch;
    queue.push_back(b);
  }
  if (n == 0) return 1;
  if (attr[init] == epoch) return 0;

  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t v = queue[qi];
    for (uint32_t i = lts_.rrow_off[v]; i < lts_.rrow_off[v + 1]; ++i) {
      uint32_t u = lts_.rcol[i];
      if (attr[u] == epoch) continue;
      bool safe = is_safe(u);
      if (!safe && forced_[u] >= 0 && static_cast<uint32_t>(forced_[u]) != v)
        continue;  // engraved away
      if (!safe) {
        attr[u] = epoch;
        if (u == init) return 0;
        queue.push_back(u);
      } else {
        // Safe states are never engraved; their degree is the full row.
        if (cnt_stamp[u] != epoch) {
          cnt_stamp[u] = epoch;
          cnt[u] = lts_.row_off[u + 1] - lts_.row_off[u];
        }
        if (--cnt[u] == 0) {
          attr[u] = epoch;
          if (u == init) return 0;
          queue.push_back(u);
        }
      }
    }
  }
  return 1;
}

std::unique_ptr<CoalitionOracle::Scratch> CoalitionOracle::acquire_scratch() const {
  {
    std::lock_guard<std::mutex> lock(scratch_mutex_);
    if (!scratch_pool_.empty()) {
      auto s = std::move(scratch_pool_.back());
      scratch_pool_.pop_back();
      return s;
    }
  }
  auto s = std::make_unique<Scratch>();
  s->attr_stamp.assign(lts_.num_states, 0);
  s->cnt_stamp.assign(lts_.num_states, 0);
  s->cnt.assign(lts_.num_states, 0);
  s->queue.reserve(lts_.num_states);
  return s;
}

void CoalitionOracle::release_scratch(std::unique_ptr<Scratch> s) const {
  std::lock_guard<std::mutex> lock(scratch_mutex_);
  scratch_pool_.push_back(std::move(s));
}

namespace {

void run_chunked(uint64_t total, int threads, const std::function<void(uint64_t, uint64_t)>& body) {
  if (threads <= 1 || total < 2) {
    body(0, total);
    return;
  }
  uint64_t t = static_cast<uint64_t>(threads);
  std::vector<std::thread> pool;
  for (uint64_t k = 0; k < t; ++k) {
    uint64_t lo = total * k / t, hi = total * (k + 1) / t;
    if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ExactShapley shapley_exact(const CoalitionOracle& oracle, int threads, int max_actors) {
  int n = oracle.actor_count();
  check_actor_cap(n, max_actors);
  uint64_t total = uint64_t{1} << n;

  // Fill phase: Gray-code order so consecutive coalitions differ in one actor.
  run_chunked(total, threads, [&](uint64_t lo, uint64_t hi) {
    for (uint64_t pos = lo; pos < hi; ++pos) oracle.gamma(pos ^ (pos >> 1));
  });

  // Aggregation reads only the memo table; single-threaded and deterministic.
  ExactShapley out;
  out.witnesses.assign(static_cast<size_t>(n), std::nullopt);
  std::vector<std::vector<uint64_t>> counts(
      static_cast<size_t>(n), std::vector<uint64_t>(static_cast<size_t>(n ? n : 1), 0));
  std::vector<int> witness_size(static_cast<size_t>(n), n + 1);

  for (uint64_t m = 0; m < total; ++m) {
    if (oracle.gamma(m) != 0) continue;
    int size = std::popcount(m);
    for (int a = 0; a < n; ++a) {
      uint64_t bit = uint64_t{1} << a;
      if (m & bit) continue;
      if (oracle.gamma(m | bit) == 1) {
        ++counts[static_cast<size_t>(a)][static_cast<size_t>(size)];
        if (size < witness_size[static_cast<size_t>(a)]) {
          witness_size[static_cast<size_t>(a)] = size;
          out.witnesses[static_cast<size_t>(a)] = m;
        }
      }
    }
  }

  BigInt n_fact = Rational::factorial(static_cast<unsigned>(n));
  std::vector<BigInt> fact(static_cast<size_t>(n) + 1);
  for (unsigned k = 0; k <= static_cast<unsigned>(n); ++k)
    fact[k] = Rational::factorial(k);

  for (int a = 0; a < n; ++a) {
    BigInt acc = 0;
    for (int k = 0; k < n; ++k) {
      if (counts[static_cast<size_t>(a)][static_cast<size_t>(k)] == 0) continue;
      acc += BigInt(counts[static_cast<size_t>(a)][static_cast<size_t>(k)]) *
             fact[static_cast<size_t>(k)] * fact[static_cast<size_t>(n - 1 - k)];
    }
    out.values.push_back(n > 0 ? Rational(acc, n_fact) : Rational(0));
  }

  out.gamma_empty = oracle.gamma(0);
  out.gamma_full = oracle.gamma(total - 1);
  out.coalitions = oracle.evaluations();
  return out;
}

SampledShapley shapley_sampled(const CoalitionOracle& oracle, uint64_t samples,
                               uint64_t seed, int threads) {
  if (samples == 0) fail(ErrorKind::usage, "sample count must be positive");
  int n = oracle.actor_count();
  size_t un = static_cast<size_t>(n);

  constexpr uint64_t kChunk = 1024;
  uint64_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> chunk_sum(nchunks), chunk_sum2(nchunks);

  std::atomic<uint64_t> next_chunk{0};
  auto worker = [&]() {
    std::vector<int> perm(un);
    std::vector<double> x(un), fwd(un), rev(un);
    for (;;) {
      uint64_t c = next_chunk.fetch_add(1);
      if (c >= nchunks) return;
      uint64_t lo = c * kChunk, hi = std::min(samples, lo + kChunk);
      std::vector<double> sum(un, 0.0), sum2(un, 0.0);
      for (uint64_t i = lo; i < hi; ++i) {
        Rng rng = Rng::stream(seed, i);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        uint64_t mask = 0;
        int prev = oracle.gamma(0);
        for (int a : perm) {
          int cur = oracle.gamma(mask | (uint64_t{1} << a));
          fwd[static_cast<size_t>(a)] = cur - prev;
          prev = cur;
          mask |= uint64_t{1} << a;
        }
        mask = 0;
        prev = oracle.gamma(0);
        for (size_t k = un; k-- > 0;) {
          int a = perm[k];
          int cur = oracle.gamma(mask | (uint64_t{1} << a));
          rev[static_cast<size_t>(a)] = cur - prev;
          prev = cur;
          mask |= uint64_t{1} << a;
        }
        for (size_t a = 0; a < un; ++a) {
          x[a] = 0.5 * (fwd[a] + rev[a]);
          sum[a] += x[a];
          sum2[a] += x[a] * x[a];
        }
      }
      chunk_sum[c] = std::move(sum);
      chunk_sum2[c] = std::move(sum2);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Combine in chunk order; the result is independent of scheduling.
  std::vector<double> sum(un, 0.0), sum2(un, 0.0);
  for (uint64_t c = 0; c < nchunks; ++c) {
    for (size_t a = 0; a < un; ++a) {
      sum[a] += chunk_sum[c][a];
      sum2[a] += chunk_sum2[c][a];
    }
  }

  SampledShapley out;
  out.samples = samples;
  double k = static_cast<double>(samples);
  for (size_t a = 0; a < un; ++a) {
    double mean = sum[a] / k;
    out.means.push_back(mean);
    if (samples >= 2) {
      double var = (sum2[a] - sum[a] * sum[a] / k) / (k - 1.0);
      out.half_widths.push_back(1.96 * std::sqrt(std::max(0.0, var) / k));
    } else {
      out.half_widths.push_back(0.0);
    }
  }
  out.gamma_empty = oracle.gamma(0);
  out.gamma_full = oracle.gamma(oracle.full_coalition());
  out.coalitions = oracle.evaluations();
  return out;
}

std::optional<uint64_t> positivity_witness(const CoalitionOracle& oracle, int actor,
                                           int max_actors) {
  int n = oracle.actor_count();
  check_actor_cap(n, max_actors);
  if (actor < 0 || actor >= n) fail(ErrorKind::usage, "actor index out of range");
  uint64_t abit = uint64_t{1} << actor;
  uint64_t others = uint64_t{1} << (n - 1);

  for (int size = 0; size < n; ++size) {
    if (size == 0) {
      if (oracle.gamma(0) == 0 && oracle.gamma(abit) == 1) return uint64_t{0};
      continue;
    }
    for (uint64_t c = (uint64_t{1} << size) - 1; c < others; c = next_same_popcount(c)) {
      uint64_t mask = expand_around(c, actor);
      if (oracle.gamma(mask) == 0 && oracle.gamma(mask | abit) == 1) return mask;
    }
  }
  return std::nullopt;
}

ThresholdResult threshold(const CoalitionOracle& oracle, int actor, const Rational& q,
                          int max_actors) {
  int n = oracle.actor_count();
  check_actor_cap(n, max_actors);
  if (actor < 0 || actor >= n) fail(ErrorKind::usage, "actor index out of range");
  uint64_t abit = uint64_t{1} << actor;

  std::vector<BigInt> fact(static_cast<size_t>(n) + 1);
  for (unsigned k = 0; k <= static_cast<unsigned>(n); ++k)
    fact[k] = Rational::factorial(k);

  BigInt acc = 0;
  uint64_t others = uint64_t{1} << (n - 1);
  for (uint64_t c = 0; c < others; ++c) {
    uint64_t mask = expand_around(c, actor);
    int d = oracle.gamma(mask | abit) - oracle.gamma(mask);
    if (d == 0) continue;
    int k = std::popcount(mask);
    acc += d * fact[static_cast<size_t>(k)] * fact[static_cast<size_t>(n - 1 - k)];
  }
  ThresholdResult out;
  out.value = Rational(acc, fact[static_cast<size_t>(n)]);
  out.meets = out.value >= q;
  return out;
}

}  // namespace respo
