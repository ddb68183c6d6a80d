#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "rsscma/types.hpp"

namespace rsscma {

// One step of the SplitMix64 generator, used here as a mixing function.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds (seed, word, word, ...) into one substream key. Every random draw in
// the toolkit comes from a substream addressed this way, so results depend
// only on the key tuple and the in-stream draw order, never on scheduling.
inline uint64_t stream_key(uint64_t seed, std::initializer_list<uint64_t> words) {
  uint64_t h = splitmix64(seed);
  for (uint64_t w : words) h = splitmix64(h ^ w);
  return h;
}

enum class StreamPurpose : uint64_t {
  symbols = 1,
  channel = 2,
  noise = 3,
};

// Substream generator. The mt19937_64 engine and all derived draws below are
// fully specified, so sequences are identical across platforms.
class SubstreamRng {
 public:
  explicit SubstreamRng(uint64_t key) : gen_(key) {}

  // uniform double in [0, 1), 53 significant bits
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // circularly symmetric complex normal with E|z|^2 = 1;
  // draws amplitude first, then angle
  Complex cnormal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double r = std::sqrt(-std::log(u1));
    const double th = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(th), r * std::sin(th)};
  }

  // uniform integer in [0, n), rejection sampled so every n is unbiased
  uint32_t uniform_index(uint32_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      const uint64_t r = gen_();
      if (r < limit) return static_cast<uint32_t>(r % n);
    }
  }

  uint8_t bit() { return static_cast<uint8_t>(gen_() >> 63); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rsscma
