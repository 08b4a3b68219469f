#pragma once

#include <array>
#include <cstdint>

#include "fragmark/image.h"

namespace fragmark {

// 6-bit recovery watermark w (encrypted quantized block mean).
struct RecoveryWatermark {
  std::uint8_t value = 0;
  friend bool operator==(const RecoveryWatermark&, const RecoveryWatermark&) = default;
};

// 2-bit authentication watermark c.
struct AuthWatermark {
  std::uint8_t value = 0;
  friend bool operator==(const AuthWatermark&, const AuthWatermark&) = default;
};

struct BlockPayload {
  AuthWatermark auth;
  RecoveryWatermark recovery;
  friend bool operator==(const BlockPayload&, const BlockPayload&) = default;
};

// First 8 bytes (big-endian) of SHA-256(key_be64 || input_be64).
std::uint64_t prf64(std::uint64_t key, std::uint64_t input);

inline std::uint8_t keystream6(std::uint64_t k1, std::uint64_t linear_index) {
  return std::uint8_t(prf64(k1, linear_index) & 0x3F);
}

// floor(sum(p >> 2) / 4): the mean of the six most significant bits.
constexpr std::uint8_t block_mean6(const BlockPixels& p) noexcept {
  return std::uint8_t(((p[0] >> 2) + (p[1] >> 2) + (p[2] >> 2) + (p[3] >> 2)) >> 2);
}

RecoveryWatermark gen_recovery_watermark(std::uint64_t k1, std::uint64_t linear_index,
                                         const BlockPixels& pixels);

AuthWatermark gen_auth_watermark(std::uint64_t k2, RecoveryWatermark w);

// c = F2(k2, w) for all 64 values of w; avoids rehashing per block.
class AuthTable {
 public:
  explicit AuthTable(std::uint64_t k2);
  AuthWatermark operator()(RecoveryWatermark w) const noexcept { return {table_[w.value & 0x3F]}; }

 private:
  std::array<std::uint8_t, 64> table_{};
};

// Slot layout over the block's eight LSB pairs:
//   p0 <- c, p1 <- w[5:4], p2 <- w[3:2], p3 <- w[1:0].
constexpr BlockPixels embed_block_payload(const BlockPixels& p, AuthWatermark c,
                                          RecoveryWatermark w) noexcept {
  const auto put = [](std::uint8_t pixel, unsigned bits) {
    return std::uint8_t((pixel & 0xFC) | (bits & 0x03));
  };
  return {put(p[0], c.value), put(p[1], unsigned(w.value) >> 4),
          put(p[2], unsigned(w.value) >> 2), put(p[3], w.value)};
}

constexpr BlockPayload extract_block_payload(const BlockPixels& p) noexcept {
  return {AuthWatermark{std::uint8_t(p[0] & 0x03)},
          RecoveryWatermark{std::uint8_t(((p[1] & 0x03) << 4) | ((p[2] & 0x03) << 2) |
                                         (p[3] & 0x03))}};
}

// Inverse of the recovery encoding: decrypt w and place every pixel at the
// centre of its quantization bin.
BlockPixels reconstruct_block(std::uint64_t k1, std::uint64_t linear_index, RecoveryWatermark w);

}  // namespace fragmark
