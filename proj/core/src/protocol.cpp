#include "fragmark/protocol.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fragmark/errors.h"

namespace fragmark {

namespace {

std::vector<std::uint8_t> keystream_table(std::uint64_t k1, std::size_t n) {
  std::vector<std::uint8_t> ks(n);
  for (std::size_t i = 0; i < n; ++i) ks[i] = keystream6(k1, i);
  return ks;
}

void require_grid_match(const GrayImage& image, const BlockMapping& mapping) {
  if (split_into_blocks(image) != mapping.grid()) {
    fail(ErrorKind::Dimension, "image block grid does not match the mapping grid");
  }
}

bool has_tampered_neighbor(const TamperMap& map, BlockIndex b) {
  const BlockGrid& grid = map.grid();
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const BlockIndex nb{b.row + dr, b.col + dc};
      if (grid.contains(nb) && map.at(nb) == Verdict::Tampered) return true;
    }
  }
  return false;
}

}  // namespace

WatermarkedImage embed(const GrayImage& image, const KeySet& keys, const MappingSpec& spec) {
  const BlockGrid grid = split_into_blocks(image);
  return embed(image, keys, build_mapping(spec, keys.k3, grid));
}

WatermarkedImage embed(const GrayImage& image, const KeySet& keys, const BlockMapping& mapping) {
  require_grid_match(image, mapping);
  const BlockGrid grid = mapping.grid();
  const std::size_t n = grid.total();
  const auto ks = keystream_table(keys.k1, n);
  const AuthTable auth(keys.k2);

  std::vector<RecoveryWatermark> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = {std::uint8_t(block_mean6(image.block(grid.at(i))) ^ ks[i])};
  }

  WatermarkedImage out{image, mapping.spec(), key_fingerprint(keys)};
  for (std::size_t k = 0; k < n; ++k) {
    const BlockIndex b = grid.at(k);
    out.image.set_block(b, embed_block_payload(image.block(b), auth(w[k]), w[mapping.inverse(k)]));
  }
  return out;
}

AuthenticationReport authenticate(const GrayImage& image, const KeySet& keys,
                                  const MappingSpec& spec) {
  const BlockGrid grid = split_into_blocks(image);
  return authenticate(image, keys, build_mapping(spec, keys.k3, grid));
}

AuthenticationReport authenticate(const GrayImage& image, const KeySet& keys,
                                  const BlockMapping& mapping) {
  require_grid_match(image, mapping);
  const BlockGrid grid = mapping.grid();
  const std::size_t n = grid.total();
  const auto ks = keystream_table(keys.k1, n);
  const AuthTable auth(keys.k2);

  // Per-block quantities: extracted payload, recomputed w^ and the c check.
  std::vector<BlockPayload> extracted(n);
  std::vector<std::uint8_t> w_hat(n);
  std::vector<bool> c_pass(n);
  for (std::size_t k = 0; k < n; ++k) {
    const BlockPixels px = image.block(grid.at(k));
    extracted[k] = extract_block_payload(px);
    w_hat[k] = std::uint8_t(block_mean6(px) ^ ks[k]);
    c_pass[k] = extracted[k].auth == auth(RecoveryWatermark{w_hat[k]});
  }
  // w' of block i lives in the w-slot of its mapping block.
  const auto consistent = [&](std::size_t i) {
    return extracted[mapping.forward(i)].recovery.value == w_hat[i];
  };

  AuthenticationReport report;
  report.preliminary = TamperMap(grid, VerdictStage::Preliminary);
  report.final_map = TamperMap(grid, VerdictStage::Refined);
  report.preliminary_case.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = mapping.forward(i);
    AuthCase label;
    if (!c_pass[i]) {
      label = AuthCase::AuthMismatch;
    } else if (consistent(i)) {
      label = AuthCase::Consistent;
    } else if (!c_pass[m]) {
      label = AuthCase::MappingBlockFailed;
    } else if (consistent(m)) {
      label = AuthCase::ContentMismatch;
    } else {
      label = AuthCase::MappingBlockSuspect;
    }
    report.preliminary_case[i] = label;
    const bool tampered = label == AuthCase::AuthMismatch || label == AuthCase::ContentMismatch;
    report.preliminary.set(i, tampered ? Verdict::Tampered : Verdict::Authentic);
  }

  // Case 6: one pass over the complete preliminary map.
  report.case_label = report.preliminary_case;
  for (std::size_t i = 0; i < n; ++i) {
    if (report.preliminary.tampered(i)) {
      report.final_map.set(i, Verdict::Tampered);
    } else if (has_tampered_neighbor(report.preliminary, grid.at(i))) {
      report.final_map.set(i, Verdict::Tampered);
      report.case_label[i] = AuthCase::Refined;
    }
  }
  for (const AuthCase c : report.case_label) ++report.case_histogram[std::size_t(c)];
  return report;
}

bool trusted_recovery_source(const AuthenticationReport& report, std::size_t k) {
  switch (report.preliminary_case[k]) {
    case AuthCase::Consistent:
    case AuthCase::MappingBlockFailed:
    case AuthCase::MappingBlockSuspect:
      return true;
    case AuthCase::ContentMismatch:
      return !has_tampered_neighbor(report.preliminary, report.preliminary.grid().at(k));
    default:
      return false;
  }
}

RecoveryResult recover(const GrayImage& image, const AuthenticationReport& report,
                       const KeySet& keys, const BlockMapping& mapping) {
  require_grid_match(image, mapping);
  const BlockGrid grid = mapping.grid();
  if (report.final_map.size() != grid.total()) {
    fail(ErrorKind::Dimension, "authentication report does not match the image");
  }
  RecoveryResult result{image, {}, {}, {}};
  for (std::size_t i = 0; i < grid.total(); ++i) {
    if (!report.final_map.tampered(i)) continue;
    const std::uint32_t source = mapping.forward(i);
    if (!trusted_recovery_source(report, source)) {
      result.unrecoverable.push_back(std::uint32_t(i));
      continue;
    }
    const RecoveryWatermark w = extract_block_payload(image.block(grid.at(source))).recovery;
    result.image.set_block(grid.at(i), reconstruct_block(keys.k1, i, w));
    result.recovered.push_back(std::uint32_t(i));
    result.sources.push_back(source);
  }
  return result;
}

double measure_recovery_rate(std::span<const std::uint32_t> ground_truth,
                             const RecoveryResult& result, std::size_t total_blocks) {
  if (ground_truth.empty()) {
    fail(ErrorKind::Domain, "recovery rate is undefined for an empty ground truth");
  }
  std::vector<bool> in_truth(total_blocks, false);
  for (const std::uint32_t b : ground_truth) {
    if (b >= total_blocks) fail(ErrorKind::Parameter, "ground-truth block outside the grid");
    in_truth[b] = true;
  }
  std::size_t restored = 0;
  for (std::size_t k = 0; k < result.recovered.size(); ++k) {
    const std::uint32_t b = result.recovered[k];
    if (b < total_blocks && in_truth[b] && !in_truth[result.sources[k]]) ++restored;
  }
  return double(restored) / double(ground_truth.size());
}

double measure_recovery_rate(const TamperRegion& region, const BlockGrid& grid,
                             const RecoveryResult& result) {
  validate_region(region, grid);
  const auto truth = region.linear_blocks(grid);
  return measure_recovery_rate(truth, result, grid.total());
}

std::vector<Pixel> block_mask(const TamperMap& map) {
  std::vector<Pixel> mask(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) mask[i] = map.tampered(i) ? 255 : 0;
  return mask;
}

GrayImage pixel_mask(const TamperMap& map) {
  const BlockGrid& grid = map.grid();
  GrayImage mask(2 * grid.cols(), 2 * grid.rows());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map.tampered(i)) continue;
    mask.set_block(grid.at(i), {255, 255, 255, 255});
  }
  return mask;
}

std::size_t recoverable_count(const AuthenticationReport& report, const BlockMapping& mapping) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < report.final_map.size(); ++i) {
    if (report.final_map.tampered(i) && trusted_recovery_source(report, mapping.forward(i))) ++count;
  }
  return count;
}

std::string report_json(const AuthenticationReport& report, const RecoveryResult* recovery,
                        const BlockMapping& mapping) {
  nlohmann::ordered_json j;
  j["blocks"] = report.final_map.size();
  j["tampered"] = report.final_map.count_tampered();
  j["preliminary_tampered"] = report.preliminary.count_tampered();
  if (recovery != nullptr) {
    j["recovered"] = recovery->recovered.size();
    j["unrecoverable"] = recovery->unrecoverable.size();
  } else {
    const std::size_t possible = recoverable_count(report, mapping);
    j["recovered"] = possible;
    j["unrecoverable"] = report.final_map.count_tampered() - possible;
  }
  nlohmann::ordered_json cases;
  for (int c = 1; c <= 6; ++c) cases[std::to_string(c)] = report.case_histogram[std::size_t(c)];
  j["cases"] = cases;
  j["mapping"] = describe(mapping.spec());
  return j.dump(2) + "\n";
}

void write_embed_sidecar(const std::filesystem::path& path, const WatermarkedImage& marked) {
  nlohmann::ordered_json j;
  j["strategy"] = to_string(marked.params.strategy);
  j["r"] = marked.params.r;
  j["arnold_iterations"] = marked.params.arnold_iterations;
  j["key_fingerprint"] = marked.key_fingerprint;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write sidecar " + path.string());
  out << j.dump(2) << '\n';
}

EmbedSidecar read_embed_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open sidecar " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    EmbedSidecar s;
    s.params.strategy = parse_strategy(j.at("strategy").get<std::string>());
    s.params.r = j.at("r").get<int>();
    s.params.arnold_iterations = j.value("arnold_iterations", 1);
    s.key_fingerprint = j.at("key_fingerprint").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "sidecar " + path.string() + ": " + e.what());
  }
}

std::filesystem::path sidecar_path_for(const std::filesystem::path& image_path) {
  return std::filesystem::path(image_path.string() + ".json");
}

}  // namespace fragmark
