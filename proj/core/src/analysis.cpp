#include "fragmark/analysis.h"

#include <ostream>
#include <string>

#include "fragmark/errors.h"

namespace fragmark {

namespace {

std::string ij(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Rows (or columns) of L seen by the window of the block at 1-based position
// i, for an interior placement. Branches follow the window geometry.
int extent(int r, int l, int i) {
  const int h = (r - 1) / 2;
  if (l <= h) return l;
  if (l <= r) {
    if (i < l - h) return h + i;
    if (i <= h + 1) return l;
    return h + (l - i) + 1;
  }
  if (i <= h) return h + i;
  if (i <= l - h) return r;
  return h + (l - i) + 1;
}

}  // namespace

void validate(const TheoryParams& params) {
  validate_radius_param(params.r);
  if (params.n <= 0) fail(ErrorKind::Parameter, "grid side n must be positive");
  if (params.l < 0) fail(ErrorKind::Parameter, "tamper side l must be non-negative");
  if (params.l == 0) fail(ErrorKind::Domain, "recovery rate is undefined for an empty tamper region");
  validate_region(params.region(), params.grid());
}

double block_recovery_rate_exact(const TheoryParams& params, BlockIndex block) {
  validate(params);
  return block_recovery_rate_exact(params.grid(), params.r, params.region(), block);
}

double block_recovery_rate_exact(const BlockGrid& grid, int r, const TamperRegion& region,
                                 BlockIndex block) {
  validate_region(region, grid);
  if (!region.contains(block)) {
    fail(ErrorKind::Domain, "block " + ij(block.row, block.col) + " is not in the tampered region");
  }
  const std::int64_t window = neighborhood_size(block, r, grid);
  const std::int64_t total = std::int64_t(grid.total());
  if (total <= window) {
    fail(ErrorKind::Domain, "neighborhood covers the whole grid; no mapping target exists");
  }
  const std::int64_t overlap = region_neighborhood_intersection(region, block, r, grid);
  return 1.0 - double(region.size() - overlap) / double(total - window);
}

RecoveryProfile average_recovery_rate(const TheoryParams& params) {
  validate(params);
  return average_recovery_rate(params.grid(), params.r, params.region());
}

RecoveryProfile average_recovery_rate(const BlockGrid& grid, int r, const TamperRegion& region) {
  validate_radius_param(r);
  if (region.side == 0) {
    fail(ErrorKind::Domain, "average recovery rate needs a tampered side l >= 1");
  }
  validate_region(region, grid);
  RecoveryProfile profile;
  profile.side = region.side;
  profile.rates.reserve(std::size_t(region.size()));
  double sum = 0.0;
  for (int i = 0; i < region.side; ++i) {
    for (int j = 0; j < region.side; ++j) {
      const double rate = block_recovery_rate_exact(
          grid, r, region, {region.origin.row + i, region.origin.col + j});
      profile.rates.push_back(rate);
      sum += rate;
    }
  }
  profile.average = sum / double(region.size());
  return profile;
}

IntersectionExtent closed_form_ud(int r, int l, int i, int j) {
  validate_radius_param(r);
  if (l < 1 || i < 1 || i > l || j < 1 || j > l) {
    fail(ErrorKind::Domain, "position " + ij(i, j) + " is outside a tampered side of " +
                                std::to_string(l));
  }
  return {extent(r, l, i), extent(r, l, j)};
}

double closed_form_block_rate(int n, int r, int l, int i, int j) {
  const auto [u, d] = closed_form_ud(r, l, i, j);
  const double cells = double(n) * n;
  return 1.0 - (double(l) * l - double(u) * d) / (cells - double(r) * r);
}

double random_tamper_rate(int n, std::int64_t tampered_count) {
  const std::int64_t total = std::int64_t(n) * n;
  if (n <= 0 || tampered_count < 0 || tampered_count > total) {
    fail(ErrorKind::Parameter, "tampered count must lie in [0, n^2]");
  }
  return 1.0 - double(tampered_count) / double(total);
}

double superiority_margin(const TheoryParams& params, BlockIndex block) {
  const double h = block_recovery_rate_exact(params, block);
  const double l2 = double(params.l) * params.l;
  return h - (1.0 - l2 / (double(params.n) * params.n));
}

const char* to_string(TamperPosition position) {
  switch (position) {
    case TamperPosition::Corner: return "corner";
    case TamperPosition::Reference: return "reference";
    case TamperPosition::Center: return "center";
  }
  return "unknown";
}

std::vector<PositionRate> position_sweep(int n, int r, int l) {
  if (l < 1) fail(ErrorKind::Domain, "position sweep needs l >= 1");
  const int mid = (n - l) / 2;
  const std::vector<PositionRate> placements = {
      {TamperPosition::Corner, {0, 0}, 0.0},
      {TamperPosition::Reference, kReferenceOrigin, 0.0},
      {TamperPosition::Center, {mid, mid}, 0.0},
  };
  std::vector<PositionRate> out;
  for (PositionRate p : placements) {
    p.average = average_recovery_rate(TheoryParams{n, r, l, p.origin}).average;
    out.push_back(p);
  }
  return out;
}

double mapping_region_rate(const BlockMapping& mapping, const TamperRegion& region) {
  const BlockGrid& grid = mapping.grid();
  validate_region(region, grid);
  if (region.side < 1) fail(ErrorKind::Domain, "mapping rate needs l >= 1");
  std::int64_t survive = 0;
  for (const std::uint32_t b : region.linear_blocks(grid)) {
    if (!region.contains(grid.at(mapping.forward(b)))) ++survive;
  }
  return double(survive) / double(region.size());
}

void write_theory_table(std::ostream& out, int n, std::span<const int> r_values,
                        std::span<const int> l_values, BlockIndex origin) {
  out << "r,l,H_avg_theory\n";
  const auto old_precision = out.precision(10);
  for (const int r : r_values) {
    for (const int l : l_values) {
      out << r << ',' << l << ',' << average_recovery_rate(TheoryParams{n, r, l, origin}).average
          << '\n';
    }
  }
  out.precision(old_precision);
}

void write_heatmap_csv(std::ostream& out, const RecoveryProfile& profile) {
  const auto old_precision = out.precision(10);
  for (int i = 0; i < profile.side; ++i) {
    for (int j = 0; j < profile.side; ++j) {
      if (j > 0) out << ',';
      out << profile.at(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fragmark
