#pragma once

#include <cstdint>
#include <vector>

namespace respo {

// splitmix64; every seeded output is identical across platforms and toolchains,
// which std::uniform_int_distribution does not guarantee.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection, bias-free.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Derives an independent stream; used to give each sampled permutation its
  // own generator so results do not depend on thread scheduling.
  static Rng stream(uint64_t seed, uint64_t index) {
    Rng mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return Rng(mix.next());
  }

 private:
  uint64_t state_;
};

}  // namespace respo
