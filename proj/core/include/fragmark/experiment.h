#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fragmark/image.h"
#include "fragmark/keys.h"
#include "fragmark/mapping.h"
#include "fragmark/protocol.h"

namespace fragmark {

// 10*log10(255^2 / MSE); +infinity for identical images.
double psnr(const GrayImage& a, const GrayImage& b);

// Seeded mixture of gradients, low-frequency waves and noise. Content only
// shapes PSNR; recovery statistics depend on geometry alone.
GrayImage synthetic_image(std::uint64_t seed, int width, int height);

struct ImageSource {
  std::string id;
  std::optional<std::filesystem::path> path;  // file source when set
  std::uint64_t seed = 0;                     // synthetic source otherwise
  int width = 512;
  int height = 512;

  GrayImage load() const;
};

std::vector<ImageSource> synthetic_sources(int count, int width, int height,
                                           std::uint64_t seed);

struct TamperOutcome {
  GrayImage image;
  std::vector<std::uint32_t> ground_truth;  // linear block indices, ascending
};

// Replaces every pixel of the region's blocks with seeded random bytes.
TamperOutcome apply_square_tamper(const GrayImage& image, const TamperRegion& region,
                                  std::uint64_t seed);

// Overwrites `count` distinct blocks chosen by seeded sampling without replacement.
TamperOutcome apply_random_tamper(const GrayImage& image, std::size_t count, std::uint64_t seed);

enum class TamperMode { Square, Random };

struct ExperimentPlan {
  std::vector<ImageSource> images;
  std::vector<int> r_values;
  std::vector<int> l_values;
  // A de-neighborhood entry with r == 0 expands over r_values; any other
  // entry forms a single strategy row.
  std::vector<MappingSpec> strategies;
  BlockIndex origin = {3, 5};
  int trials = 1;
  std::uint64_t master_seed = 0;
  TamperMode mode = TamperMode::Square;
  std::size_t random_count = 0;  // used when mode == Random

  std::optional<std::filesystem::path> artifacts_dir;
  bool write_images = false;  // masks/ and recovered/ PGMs
  int workers = 1;
};

struct TrialRecord {
  std::string image_id;
  std::string strategy;
  int r = 0;
  int l = 0;  // tamper side, or tampered block count in random mode
  int trial = 0;
  double measured_rate = 0.0;
  double theory_rate = 0.0;
  double abs_error = 0.0;
  double psnr_db = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentCell {
  MappingSpec strategy;
  int r = 0;
  int l = 0;
  double measured_rate = 0.0;  // mean over images x trials
  double theory_rate = 0.0;
  double abs_error = 0.0;
  std::size_t trials = 0;
  double psnr_db = 0.0;
  std::vector<double> trial_rates;
  bool failed = false;
  std::string failure;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  std::vector<TrialRecord> records;

  bool any_failed() const;
};

// Enumerates the cells a plan will run and rejects infeasible (r, grid)
// combinations before any work starts.
std::vector<ExperimentCell> plan_cells(const ExperimentPlan& plan);

// Runs every cell; deterministic given the plan and master seed regardless of
// `workers`. A failing cell is recorded, not thrown.
ExperimentResult run_plan(const ExperimentPlan& plan);

// Header: image_id,strategy,r,l,trial,measured_rate,theory_rate,abs_error,psnr_db,seed
std::string trials_csv(const std::vector<TrialRecord>& records);
// Header: strategy,r,l,trials,measured_rate,theory_rate,abs_error,psnr_db,status
std::string cells_csv(const std::vector<ExperimentCell>& cells);

// Expected rate used as the reference for a cell.
double cell_theory_rate(const MappingSpec& spec, const BlockGrid& grid, const ExperimentPlan& plan,
                        int l);

}  // namespace fragmark
