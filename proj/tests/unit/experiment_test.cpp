#include <cmath>
#include <filesystem>
#include <set>

#include "test_util.h"

using namespace fragmark;

TEST(Psnr, Basics) {
  const GrayImage a(4, 4, 10);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  GrayImage b = a;
  b.at(0, 0) = 11;  // MSE = 1/16
  EXPECT_NEAR(psnr(a, b), 10 * std::log10(255.0 * 255.0 * 16), 1e-9);
  EXPECT_FRAGMARK_ERROR(psnr(a, GrayImage(4, 6)), ErrorKind::Dimension);
}

TEST(Synthetic, DeterministicAndSeedDependent) {
  EXPECT_EQ(synthetic_image(1, 64, 32), synthetic_image(1, 64, 32));
  EXPECT_NE(synthetic_image(1, 64, 32), synthetic_image(2, 64, 32));
  const auto sources = synthetic_sources(3, 32, 32, 5);
  ASSERT_EQ(sources.size(), 3u);
  EXPECT_NE(sources[0].id, sources[1].id);
}

TEST(Tamper, SquareTouchesOnlyRegion) {
  const GrayImage img(32, 32, 100);
  const TamperRegion region{{2, 3}, 4};
  const TamperOutcome t = apply_square_tamper(img, region, 1);
  EXPECT_EQ(t.ground_truth, region.linear_blocks(img.grid()));
  for (std::size_t k = 0; k < img.grid().total(); ++k) {
    if (!region.contains(img.grid().at(k))) {
      EXPECT_EQ(t.image.block(img.grid().at(k)), img.block(img.grid().at(k)));
    }
  }
  EXPECT_FRAGMARK_ERROR(apply_square_tamper(img, {{14, 14}, 4}, 1), ErrorKind::Parameter);
}

TEST(Tamper, RandomPicksDistinctBlocks) {
  const GrayImage img(64, 64, 0);
  const TamperOutcome t = apply_random_tamper(img, 300, 8);
  EXPECT_EQ(t.ground_truth.size(), 300u);
  EXPECT_EQ(std::set<std::uint32_t>(t.ground_truth.begin(), t.ground_truth.end()).size(), 300u);
  EXPECT_TRUE(std::is_sorted(t.ground_truth.begin(), t.ground_truth.end()));
  EXPECT_EQ(apply_random_tamper(img, 300, 8).ground_truth, t.ground_truth);
  EXPECT_FRAGMARK_ERROR(apply_random_tamper(img, 2000, 8), ErrorKind::Parameter);
}

namespace {
ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.images = synthetic_sources(2, 128, 128, 3);
  plan.r_values = {5, 9};
  plan.l_values = {2, 10};
  plan.strategies = {MappingSpec{MappingStrategy::Deneighborhood, 0, 1}};
  plan.trials = 2;
  plan.master_seed = 77;
  return plan;
}
}  // namespace

TEST(Experiment, PlanExpandsCells) {
  const auto cells = plan_cells(small_plan());
  EXPECT_EQ(cells.size(), 4u);
  ExperimentPlan bad = small_plan();
  bad.r_values = {61};
  EXPECT_FRAGMARK_ERROR(plan_cells(bad), ErrorKind::Parameter);
}

TEST(Experiment, DeterministicAcrossWorkerCounts) {
  ExperimentPlan plan = small_plan();
  const auto a = run_plan(plan);
  plan.workers = 4;
  const auto b = run_plan(plan);
  EXPECT_EQ(trials_csv(a.records), trials_csv(b.records));
  EXPECT_EQ(cells_csv(a.cells), cells_csv(b.cells));
  EXPECT_EQ(a.records.size(), 4u * 2u * 2u);
  EXPECT_FALSE(a.any_failed());
}

TEST(Experiment, SmallSquareFullyRecovered) {
  const auto result = run_plan(small_plan());
  for (const auto& c : result.cells) {
    if (c.l <= (c.r - 1) / 2) {
      EXPECT_EQ(c.measured_rate, 1.0);
      EXPECT_EQ(c.theory_rate, 1.0);
    }
  }
}

TEST(Experiment, CsvHeadersAndArtifacts) {
  ExperimentPlan plan = small_plan();
  plan.images.resize(1);
  plan.trials = 1;
  const auto dir = std::filesystem::temp_directory_path() / "fragmark_exp_test";
  std::filesystem::remove_all(dir);
  plan.artifacts_dir = dir;
  plan.write_images = true;
  const auto result = run_plan(plan);
  const std::string trials = trials_csv(result.records);
  EXPECT_EQ(trials.substr(0, trials.find('\n')),
            "image_id,strategy,r,l,trial,measured_rate,theory_rate,abs_error,psnr_db,seed");
  const std::string cells = cells_csv(result.cells);
  EXPECT_EQ(cells.substr(0, cells.find('\n')),
            "strategy,r,l,trials,measured_rate,theory_rate,abs_error,psnr_db,status");
  EXPECT_TRUE(std::filesystem::exists(dir / "tables" / "trials.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "tables" / "cells.csv"));
  EXPECT_FALSE(std::filesystem::is_empty(dir / "masks"));
  EXPECT_FALSE(std::filesystem::is_empty(dir / "recovered"));
  std::filesystem::remove_all(dir);
}

TEST(Experiment, TheoryReferencePerStrategy) {
  const ExperimentPlan plan = small_plan();
  const BlockGrid grid(64, 64);
  EXPECT_DOUBLE_EQ(cell_theory_rate({MappingStrategy::Random, 0, 1}, grid, plan, 10),
                   1.0 - 100.0 / 4096.0);
  EXPECT_DOUBLE_EQ(cell_theory_rate({MappingStrategy::Offset, 0, 1}, grid, plan, 10), 1.0);
  ExperimentPlan random_mode = plan;
  random_mode.mode = TamperMode::Random;
  random_mode.random_count = 1024;
  EXPECT_DOUBLE_EQ(cell_theory_rate({MappingStrategy::Deneighborhood, 5, 1}, grid, random_mode, 0),
                   0.75);
}
