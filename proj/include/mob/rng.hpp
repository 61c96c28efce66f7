#pragma once

#include <cmath>
#include <cstdint>

namespace mob {

// Counter-based deterministic generator. Each draw is a stateless mix of
// (seed, counter), so the k-th draw of a stream can be computed without
// producing the first k-1. Parallel code exploits this: a kernel assigns
// disjoint counter ranges to threads and the output is identical to the
// serial sweep regardless of thread count.
//
// The mixer is the splitmix64 finalizer over seed + GOLDEN*(counter+1);
// the draw sequence of Rng(s) equals the splitmix64 stream seeded with s.
// Draw sequences are pinned by golden tests; do not change the constants.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() noexcept { return mix(seed_, counter_++); }

  // Uniform draw in (0, 1]; never returns 0, so -log(next_unit()) is finite.
  double next_unit() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool next_bernoulli(double p) noexcept { return next_unit() <= p; }

  // Inverse-CDF exponential with the given mean.
  double next_exponential(double mean) noexcept {
    return -mean * std::log(next_unit());
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  // Independent child stream, e.g. one per grid cell or per question.
  Rng fork(std::uint64_t stream) const noexcept {
    return Rng(mix(seed_, 0xD1B54A32D192ED03ULL ^ stream));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace mob
