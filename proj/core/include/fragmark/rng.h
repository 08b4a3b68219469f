#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace fragmark {

// SplitMix64. Its output sequence is part of the mapping format: every
// implementation seeded with the same k3 must produce the same permutation.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  // Unbiased draw from [0, bound): rejects the top partial bucket of 2^64.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

  // Uniform double in [0, 1) from the top 53 bits.
  double unit() noexcept { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Fisher-Yates, visiting positions from high to low.
template <typename T>
void seeded_shuffle(std::span<T> values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = std::size_t(rng.uniform(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

// Independent 64-bit seed for a labelled sub-stream (cell, image, trial ...).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) noexcept;

}  // namespace fragmark
