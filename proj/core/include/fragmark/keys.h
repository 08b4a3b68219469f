#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fragmark {

// Three independent secrets: k1 encrypts recovery watermarks, k2 keys the
// authentication hash, k3 seeds the block mapping.
struct KeySet {
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  std::uint64_t k3 = 0;

  friend bool operator==(const KeySet&, const KeySet&) = default;
};

// Key file text: three lines "K1=<16 hex>", "K2=<16 hex>", "K3=<16 hex>".
std::string format_keys(const KeySet& keys);
// Parse errors name the offending 1-based line.
KeySet parse_keys(std::string_view text);

KeySet load_keys(const std::filesystem::path& path);
// Writes the key file with owner-only permissions where supported.
void save_keys(const std::filesystem::path& path, const KeySet& keys);

// Fresh keys from std::random_device.
KeySet generate_keys();

// Non-secret 16-hex-digit identifier of a key set, for sidecar mismatch checks.
std::string key_fingerprint(const KeySet& keys);

}  // namespace fragmark
