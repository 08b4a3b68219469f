#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fragmark/image.h"
#include "fragmark/mapping.h"

namespace fragmark {

// Recovery-rate theory for an l x l tampered square on an n x n block grid
// under de-neighborhood mapping with parameter r.
struct TheoryParams {
  int n = 0;
  int r = 0;
  int l = 0;
  BlockIndex origin;

  BlockGrid grid() const { return BlockGrid(n, n); }
  TamperRegion region() const { return {origin, l}; }
};

// Throws a parameter error for invalid r or a region that leaves the grid.
void validate(const TheoryParams& params);

// H(B) = 1 - (|L| - |L ∩ R_B|) / (total - |R_B|), with both counts taken by
// exact rectangle intersection. Border clipping needs no special case.
double block_recovery_rate_exact(const TheoryParams& params, BlockIndex block);
double block_recovery_rate_exact(const BlockGrid& grid, int r, const TamperRegion& region,
                                 BlockIndex block);

struct RecoveryProfile {
  int side = 0;
  std::vector<double> rates;  // row-major over the l x l region
  double average = 0.0;

  double at(int i, int j) const { return rates[std::size_t(i) * side + j]; }
};

RecoveryProfile average_recovery_rate(const TheoryParams& params);
RecoveryProfile average_recovery_rate(const BlockGrid& grid, int r, const TamperRegion& region);

// Intersection extents (rows u, cols d) of an interior block's window with L.
// i and j are 1-based positions inside L.
struct IntersectionExtent {
  int u = 0;
  int d = 0;
};

IntersectionExtent closed_form_ud(int r, int l, int i, int j);

// Per-block rate from the piecewise u x d extents, valid for interior
// placements where |R| = r^2.
double closed_form_block_rate(int n, int r, int l, int i, int j);

// 1 - |L| / n^2: rate when tampered blocks are scattered uniformly.
double random_tamper_rate(int n, std::int64_t tampered_count);

// Q = H(B) - (1 - l^2/n^2). Positive Q means the block does better than
// under random mapping.
double superiority_margin(const TheoryParams& params, BlockIndex block);

enum class TamperPosition { Corner, Reference, Center };

const char* to_string(TamperPosition position);

struct PositionRate {
  TamperPosition position;
  BlockIndex origin;
  double average = 0.0;
};

// Corner (0,0), the reference origin (3,5), and the grid centre.
std::vector<PositionRate> position_sweep(int n, int r, int l);

inline constexpr BlockIndex kReferenceOrigin{3, 5};

// Exact rate of a fixed (key-independent) mapping: the fraction of L whose
// mapping block lies outside L.
double mapping_region_rate(const BlockMapping& mapping, const TamperRegion& region);

// "r,l,H_avg_theory" rows over the r x l sweep.
void write_theory_table(std::ostream& out, int n, std::span<const int> r_values,
                        std::span<const int> l_values, BlockIndex origin);

// l x l grid of per-block rates, one CSV line per row of L.
void write_heatmap_csv(std::ostream& out, const RecoveryProfile& profile);

}  // namespace fragmark
