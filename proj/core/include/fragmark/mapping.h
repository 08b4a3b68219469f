#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fragmark/image.h"

namespace fragmark {

enum class MappingStrategy : std::uint8_t {
  Deneighborhood,  // keyed permutation avoiding each block's r x r window
  Random,          // keyed permutation without fixed points
  Offset,          // fixed half-image shift
  Arnold,          // cat-map scrambling of block coordinates
};

std::string to_string(MappingStrategy strategy);
// Accepts "deneighborhood", "random", "offset", "arnold".
MappingStrategy parse_strategy(std::string_view name);

struct MappingSpec {
  MappingStrategy strategy = MappingStrategy::Deneighborhood;
  int r = 0;                  // neighborhood parameter; used by Deneighborhood only
  int arnold_iterations = 1;  // used by Arnold only

  friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

// Short label such as "deneighborhood(r=101)" or "arnold(it=1)".
std::string describe(const MappingSpec& spec);

// The block mapping epsilon: block i stores its recovery watermark in block
// forward(i). Immutable once built.
class BlockMapping {
 public:
  BlockMapping() = default;
  // inverse() is only meaningful when forward is a bijection; see verify_mapping.
  BlockMapping(BlockGrid grid, std::vector<std::uint32_t> forward, MappingSpec spec);

  const BlockGrid& grid() const noexcept { return grid_; }
  const MappingSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return forward_.size(); }

  std::uint32_t forward(std::size_t i) const noexcept { return forward_[i]; }
  std::uint32_t inverse(std::size_t k) const noexcept { return inverse_[k]; }
  const std::vector<std::uint32_t>& forward_table() const noexcept { return forward_; }
  const std::vector<std::uint32_t>& inverse_table() const noexcept { return inverse_; }

 private:
  BlockGrid grid_;
  MappingSpec spec_;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

inline constexpr int kMaxRepairPasses = 64;

// Throws a parameter error when no de-neighborhood bijection is guaranteed.
// Accepts r^2 <= total/2 (Hall's condition holds since each block excludes at
// most r^2 targets); for small grids that fail the bound, an exact bipartite
// matching decides.
void check_deneighborhood_feasible(const BlockGrid& grid, int r);

BlockMapping build_deneighborhood_mapping(std::uint64_t k3, const BlockGrid& grid, int r);
BlockMapping build_random_mapping(std::uint64_t k3, const BlockGrid& grid);
BlockMapping build_offset_mapping(const BlockGrid& grid);
BlockMapping build_arnold_mapping(const BlockGrid& grid, int iterations);

// Dispatch on spec.strategy. k3 is ignored by the keyless strategies.
BlockMapping build_mapping(const MappingSpec& spec, std::uint64_t k3, const BlockGrid& grid);

// Validates spec against grid without building anything.
void check_mapping_feasible(const MappingSpec& spec, const BlockGrid& grid);

struct MappingAudit {
  bool is_bijection = false;
  int min_chebyshev_distance = 0;
  // Blocks i with chebyshev(i, eps(i)) <= (r-1)/2. With no r (r == 0) this
  // counts fixed points eps(i) == i.
  std::size_t violations = 0;
};

// Audits against mapping.spec().r when the strategy is de-neighborhood.
MappingAudit verify_mapping(const BlockMapping& mapping, const BlockGrid& grid);
MappingAudit verify_mapping(const BlockMapping& mapping, const BlockGrid& grid, int r);

// "i,eps_i" header followed by one row per block.
void write_mapping_csv(std::ostream& out, const BlockMapping& mapping);

}  // namespace fragmark
