#include "fragmark/codec.h"

#include <openssl/sha.h>

namespace fragmark {

namespace {

void store_be64(std::uint64_t v, unsigned char* out) noexcept {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<unsigned char>(v & 0xFF);
    v >>= 8;
  }
}

}  // namespace

std::uint64_t prf64(std::uint64_t key, std::uint64_t input) {
  unsigned char message[16];
  store_be64(key, message);
  store_be64(input, message + 8);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(message, sizeof message, digest);
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | digest[i];
  return out;
}

RecoveryWatermark gen_recovery_watermark(std::uint64_t k1, std::uint64_t linear_index,
                                         const BlockPixels& pixels) {
  return {std::uint8_t(block_mean6(pixels) ^ keystream6(k1, linear_index))};
}

AuthWatermark gen_auth_watermark(std::uint64_t k2, RecoveryWatermark w) {
  return {std::uint8_t(prf64(k2, w.value) & 0x03)};
}

AuthTable::AuthTable(std::uint64_t k2) {
  for (std::uint8_t w = 0; w < 64; ++w) table_[w] = gen_auth_watermark(k2, {w}).value;
}

BlockPixels reconstruct_block(std::uint64_t k1, std::uint64_t linear_index, RecoveryWatermark w) {
  const std::uint8_t mean6 = std::uint8_t((w.value ^ keystream6(k1, linear_index)) & 0x3F);
  const std::uint8_t v = std::uint8_t((mean6 << 2) | 2);
  return {v, v, v, v};
}

}  // namespace fragmark
