#pragma once

#include <cstdint>
#include <random>

namespace locz {

// Pseudo-random source used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, so a seed means the same stream on every conforming toolchain.
// The standard distributions are implementation-defined and are not used:
// doubles take the top 53 bits, bounded integers use Lemire's
// multiply-and-reject method. Changing any of this changes every recorded
// seed's meaning, so don't.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = engine_();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for stream `index` under `master`. Pure function of both arguments,
// so trial t gets the same seed no matter how trials are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace locz
