#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fragmark/codec.h"
#include "fragmark/image.h"
#include "fragmark/keys.h"
#include "fragmark/mapping.h"

namespace fragmark {

struct WatermarkedImage {
  GrayImage image;
  MappingSpec params;
  std::string key_fingerprint;
};

// Embeds c_i into block i and w_i into block eps(i). Only the two LSBs of
// each pixel change.
WatermarkedImage embed(const GrayImage& image, const KeySet& keys, const MappingSpec& spec);
WatermarkedImage embed(const GrayImage& image, const KeySet& keys, const BlockMapping& mapping);

// Decision-table label per block. Labels 1-5 come from the per-block checks;
// 6 marks a block promoted to TAMPERED by neighbourhood refinement.
enum class AuthCase : std::uint8_t {
  AuthMismatch = 1,        // c' != c^
  Consistent = 2,          // c' == c^, w' == w^
  MappingBlockFailed = 3,  // w' != w^, mapping block fails its own c check
  ContentMismatch = 4,     // w' != w^, mapping block verified and self-consistent
  MappingBlockSuspect = 5, // w' != w^, mapping block passes c but is inconsistent
  Refined = 6,
};

struct AuthenticationReport {
  TamperMap preliminary;
  TamperMap final_map;
  std::vector<AuthCase> preliminary_case;  // labels 1-5
  std::vector<AuthCase> case_label;        // labels 1-6
  std::array<std::size_t, 7> case_histogram{};  // indexed by label; slot 0 unused

  std::size_t tampered_count() const { return final_map.count_tampered(); }
};

AuthenticationReport authenticate(const GrayImage& image, const KeySet& keys,
                                  const MappingSpec& spec);
AuthenticationReport authenticate(const GrayImage& image, const KeySet& keys,
                                  const BlockMapping& mapping);

// Whether block k may serve as the source of recovery data. A block is
// trusted when it passes its own authentication check and either was judged
// authentic by the per-block cases, or was blamed by case 4 with no
// preliminarily tampered 8-neighbour. Refinement alone never revokes trust.
bool trusted_recovery_source(const AuthenticationReport& report, std::size_t k);

struct RecoveryResult {
  GrayImage image;
  std::vector<std::uint32_t> recovered;      // finally tampered, restored
  std::vector<std::uint32_t> sources;        // mapping block used for recovered[i]
  std::vector<std::uint32_t> unrecoverable;  // finally tampered, source untrusted
};

RecoveryResult recover(const GrayImage& image, const AuthenticationReport& report,
                       const KeySet& keys, const BlockMapping& mapping);

// Fraction of ground-truth blocks restored from an untampered mapping block.
// A block "restored" from a source inside the ground truth carries forged data
// and does not count. Throws a domain error on an empty ground truth.
double measure_recovery_rate(std::span<const std::uint32_t> ground_truth,
                             const RecoveryResult& result, std::size_t total_blocks);
double measure_recovery_rate(const TamperRegion& region, const BlockGrid& grid,
                             const RecoveryResult& result);

// Tamper masks: 255 = TAMPERED, 0 = AUTHENTIC.
std::vector<Pixel> block_mask(const TamperMap& map);
GrayImage pixel_mask(const TamperMap& map);

// Number of finally tampered blocks whose mapping block is trusted.
std::size_t recoverable_count(const AuthenticationReport& report, const BlockMapping& mapping);

// JSON sidecar with tampered/recovered/unrecoverable counts and the per-case
// histogram. `recovery` may be null for verify-only reports.
std::string report_json(const AuthenticationReport& report, const RecoveryResult* recovery,
                        const BlockMapping& mapping);

// Embedding metadata kept next to the image, never inside the pixels.
struct EmbedSidecar {
  MappingSpec params;
  std::string key_fingerprint;
};

void write_embed_sidecar(const std::filesystem::path& path, const WatermarkedImage& marked);
EmbedSidecar read_embed_sidecar(const std::filesystem::path& path);

// "<image path>.json"
std::filesystem::path sidecar_path_for(const std::filesystem::path& image_path);

}  // namespace fragmark
