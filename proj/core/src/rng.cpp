#include "fragmark/rng.h"

namespace fragmark {

std::uint64_t SplitMix64::uniform(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  // 2^64 mod bound values at the top of the range would bias the result.
  const std::uint64_t excess = (max() % bound + 1) % bound;
  if (excess == 0) return next() % bound;
  const std::uint64_t last_accepted = max() - excess;
  for (;;) {
    const std::uint64_t x = next();
    if (x <= last_accepted) return x % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) noexcept {
  SplitMix64 g(master);
  std::uint64_t s = g.next() ^ a;
  SplitMix64 g2(s);
  s = g2.next() ^ b;
  SplitMix64 g3(s);
  s = g3.next() ^ c;
  SplitMix64 g4(s);
  return g4.next();
}

}  // namespace fragmark
