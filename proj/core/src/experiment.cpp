#include "fragmark/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

#include "fragmark/analysis.h"
#include "fragmark/errors.h"
#include "fragmark/pgm_io.h"
#include "fragmark/rng.h"

namespace fragmark {

namespace {

std::string format_double(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string cell_tag(const ExperimentCell& cell) {
  return to_string(cell.strategy.strategy) + "_r" + std::to_string(cell.r) + "_l" +
         std::to_string(cell.l);
}

void overwrite_block(GrayImage& image, BlockIndex b, SplitMix64& rng) {
  const std::uint64_t bits = rng.next();
  image.set_block(b, {Pixel(bits), Pixel(bits >> 8), Pixel(bits >> 16), Pixel(bits >> 24)});
}

}  // namespace

double psnr(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    fail(ErrorKind::Dimension, "PSNR needs images of equal size");
  }
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sse = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = double(pa[i]) - double(pb[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / double(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

GrayImage synthetic_image(std::uint64_t seed, int width, int height) {
  GrayImage image(width, height);
  SplitMix64 rng(seed);
  const double angle = rng.unit() * 2.0 * std::numbers::pi;
  const double fx = 1.0 + rng.unit() * 6.0;
  const double fy = 1.0 + rng.unit() * 6.0;
  const double phase = rng.unit() * 2.0 * std::numbers::pi;
  const double noise = 8.0 + rng.unit() * 32.0;
  const double base = 40.0 + rng.unit() * 60.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = double(x) / width;
      const double v = double(y) / height;
      const double ramp = (std::cos(angle) * u + std::sin(angle) * v + 1.0) * 0.5;
      const double wave = std::sin(2.0 * std::numbers::pi * (fx * u + fy * v) + phase);
      const double value = base + 110.0 * ramp + 45.0 * wave + noise * (rng.unit() - 0.5);
      image.at(x, y) = Pixel(std::clamp(std::lround(value), 0L, 255L));
    }
  }
  return image;
}

GrayImage ImageSource::load() const {
  if (path) return read_pgm(*path);
  return synthetic_image(seed, width, height);
}

std::vector<ImageSource> synthetic_sources(int count, int width, int height, std::uint64_t seed) {
  std::vector<ImageSource> out;
  for (int i = 0; i < count; ++i) {
    ImageSource s;
    s.id = "synthetic" + std::to_string(i);
    s.seed = derive_seed(seed, 0x5EED, std::uint64_t(i));
    s.width = width;
    s.height = height;
    out.push_back(std::move(s));
  }
  return out;
}

TamperOutcome apply_square_tamper(const GrayImage& image, const TamperRegion& region,
                                  std::uint64_t seed) {
  const BlockGrid grid = split_into_blocks(image);
  validate_region(region, grid);
  TamperOutcome out{image, region.linear_blocks(grid)};
  std::sort(out.ground_truth.begin(), out.ground_truth.end());
  SplitMix64 rng(seed);
  for (const std::uint32_t b : out.ground_truth) overwrite_block(out.image, grid.at(b), rng);
  return out;
}

TamperOutcome apply_random_tamper(const GrayImage& image, std::size_t count, std::uint64_t seed) {
  const BlockGrid grid = split_into_blocks(image);
  if (count > grid.total()) {
    fail(ErrorKind::Parameter, "cannot tamper " + std::to_string(count) + " of " +
                                   std::to_string(grid.total()) + " blocks");
  }
  SplitMix64 rng(seed);
  // Partial Fisher-Yates: the first `count` entries are a uniform sample.
  std::vector<std::uint32_t> order(grid.total());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = std::uint32_t(i);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + std::size_t(rng.uniform(order.size() - i));
    std::swap(order[i], order[j]);
  }
  TamperOutcome out{image, {order.begin(), order.begin() + std::ptrdiff_t(count)}};
  std::sort(out.ground_truth.begin(), out.ground_truth.end());
  for (const std::uint32_t b : out.ground_truth) overwrite_block(out.image, grid.at(b), rng);
  return out;
}

bool ExperimentResult::any_failed() const {
  return std::any_of(cells.begin(), cells.end(), [](const ExperimentCell& c) { return c.failed; });
}

std::vector<ExperimentCell> plan_cells(const ExperimentPlan& plan) {
  std::vector<MappingSpec> specs;
  for (const MappingSpec& s : plan.strategies) {
    if (s.strategy == MappingStrategy::Deneighborhood && s.r == 0) {
      for (const int r : plan.r_values) specs.push_back({MappingStrategy::Deneighborhood, r, 1});
    } else {
      specs.push_back(s);
    }
  }
  std::vector<int> sides = plan.l_values;
  if (plan.mode == TamperMode::Random) sides = {int(plan.random_count)};

  std::vector<ExperimentCell> cells;
  for (const MappingSpec& spec : specs) {
    for (const ImageSource& src : plan.images) {
      check_mapping_feasible(spec, BlockGrid(src.width / 2, src.height / 2));
    }
    for (const int l : sides) {
      ExperimentCell cell;
      cell.strategy = spec;
      cell.r = spec.strategy == MappingStrategy::Deneighborhood ? spec.r : 0;
      cell.l = l;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

double cell_theory_rate(const MappingSpec& spec, const BlockGrid& grid, const ExperimentPlan& plan,
                        int l) {
  const double total = double(grid.total());
  if (plan.mode == TamperMode::Random) return 1.0 - double(plan.random_count) / total;
  const TamperRegion region{plan.origin, l};
  switch (spec.strategy) {
    case MappingStrategy::Deneighborhood:
      return average_recovery_rate(grid, spec.r, region).average;
    case MappingStrategy::Random:
      return 1.0 - double(region.size()) / total;
    case MappingStrategy::Offset:
    case MappingStrategy::Arnold:
      return mapping_region_rate(build_mapping(spec, 0, grid), region);
  }
  return 0.0;
}

ExperimentResult run_plan(const ExperimentPlan& plan) {
  ExperimentResult result;
  if (plan.images.empty() || plan.strategies.empty()) return result;
  result.cells = plan_cells(plan);

  std::vector<GrayImage> originals;
  for (const ImageSource& src : plan.images) originals.push_back(src.load());

  const bool emit = plan.artifacts_dir.has_value();
  if (emit) {
    std::filesystem::create_directories(*plan.artifacts_dir / "tables");
    if (plan.write_images) {
      std::filesystem::create_directories(*plan.artifacts_dir / "masks");
      std::filesystem::create_directories(*plan.artifacts_dir / "recovered");
    }
  }

  std::vector<std::vector<TrialRecord>> per_cell(result.cells.size());

  auto run_cell = [&](std::size_t c) {
    ExperimentCell& cell = result.cells[c];
    std::vector<TrialRecord>& records = per_cell[c];
    double theory_sum = 0.0;
    double psnr_sum = 0.0;
    try {
      for (std::size_t m = 0; m < originals.size(); ++m) {
        const GrayImage& original = originals[m];
        const BlockGrid grid = split_into_blocks(original);
        const double theory = cell_theory_rate(cell.strategy, grid, plan, cell.l);
        for (int t = 0; t < plan.trials; ++t) {
          const std::uint64_t seed = derive_seed(plan.master_seed, c, m, std::uint64_t(t));
          SplitMix64 rng(seed);
          KeySet keys;
          keys.k1 = rng.next();
          keys.k2 = rng.next();
          keys.k3 = rng.next();
          const std::uint64_t tamper_seed = rng.next();

          const BlockMapping mapping = build_mapping(cell.strategy, keys.k3, grid);
          const WatermarkedImage marked = embed(original, keys, mapping);
          const TamperOutcome tampered =
              plan.mode == TamperMode::Square
                  ? apply_square_tamper(marked.image, {plan.origin, cell.l}, tamper_seed)
                  : apply_random_tamper(marked.image, plan.random_count, tamper_seed);
          const AuthenticationReport report = authenticate(tampered.image, keys, mapping);
          const RecoveryResult recovered = recover(tampered.image, report, keys, mapping);
          const double rate = measure_recovery_rate(tampered.ground_truth, recovered, grid.total());

          TrialRecord rec;
          rec.image_id = plan.images[m].id;
          rec.strategy = to_string(cell.strategy.strategy);
          rec.r = cell.r;
          rec.l = cell.l;
          rec.trial = t;
          rec.measured_rate = rate;
          rec.theory_rate = theory;
          rec.abs_error = std::abs(rate - theory);
          rec.psnr_db = psnr(original, marked.image);
          rec.seed = seed;
          records.push_back(rec);
          cell.trial_rates.push_back(rate);
          theory_sum += theory;
          psnr_sum += rec.psnr_db;

          if (emit && plan.write_images) {
            const std::string stem =
                cell_tag(cell) + "_" + rec.image_id + "_t" + std::to_string(t) + ".pgm";
            write_pgm(*plan.artifacts_dir / "masks" / stem, pixel_mask(report.final_map));
            write_pgm(*plan.artifacts_dir / "recovered" / stem, recovered.image);
          }
        }
      }
      cell.trials = cell.trial_rates.size();
      double sum = 0.0;
      for (const double v : cell.trial_rates) sum += v;
      cell.measured_rate = sum / double(cell.trials);
      cell.theory_rate = theory_sum / double(cell.trials);
      cell.abs_error = std::abs(cell.measured_rate - cell.theory_rate);
      cell.psnr_db = psnr_sum / double(cell.trials);
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.failure = e.what();
      std::replace(cell.failure.begin(), cell.failure.end(), ',', ';');
    }
  };

  const int workers = std::max(1, plan.workers);
  if (workers == 1) {
    for (std::size_t c = 0; c < result.cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < result.cells.size(); c = next++) run_cell(c);
      });
    }
  }

  for (auto& records : per_cell) {
    result.records.insert(result.records.end(), records.begin(), records.end());
  }

  if (emit) {
    std::ofstream trials(*plan.artifacts_dir / "tables" / "trials.csv", std::ios::binary);
    trials << trials_csv(result.records);
    std::ofstream cells(*plan.artifacts_dir / "tables" / "cells.csv", std::ios::binary);
    cells << cells_csv(result.cells);
    if (!trials || !cells) fail(ErrorKind::Io, "cannot write experiment tables");
  }
  return result;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::string out = "image_id,strategy,r,l,trial,measured_rate,theory_rate,abs_error,psnr_db,seed\n";
  for (const TrialRecord& r : records) {
    out += r.image_id + ',' + r.strategy + ',' + std::to_string(r.r) + ',' + std::to_string(r.l) +
           ',' + std::to_string(r.trial) + ',' + format_double(r.measured_rate, 6) + ',' +
           format_double(r.theory_rate, 6) + ',' + format_double(r.abs_error, 6) + ',' +
           format_double(r.psnr_db, 4) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string cells_csv(const std::vector<ExperimentCell>& cells) {
  std::string out = "strategy,r,l,trials,measured_rate,theory_rate,abs_error,psnr_db,status\n";
  for (const ExperimentCell& c : cells) {
    out += describe(c.strategy) + ',' + std::to_string(c.r) + ',' + std::to_string(c.l) + ',' +
           std::to_string(c.trials) + ',' + format_double(c.measured_rate, 6) + ',' +
           format_double(c.theory_rate, 6) + ',' + format_double(c.abs_error, 6) + ',' +
           format_double(c.psnr_db, 4) + ',' + (c.failed ? "failed: " + c.failure : "ok") + '\n';
  }
  return out;
}

}  // namespace fragmark
