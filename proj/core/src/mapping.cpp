#include "fragmark/mapping.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>

#include "fragmark/errors.h"
#include "fragmark/rng.h"

namespace fragmark {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

// Row/column lookup that avoids repeated division in hot loops.
class Coords {
 public:
  explicit Coords(const BlockGrid& grid) : row_(grid.total()), col_(grid.total()) {
    for (std::size_t i = 0; i < grid.total(); ++i) {
      const BlockIndex b = grid.at(i);
      row_[i] = b.row;
      col_[i] = b.col;
    }
  }
  int distance(std::size_t a, std::size_t b) const noexcept {
    return std::max(std::abs(row_[a] - row_[b]), std::abs(col_[a] - col_[b]));
  }

 private:
  std::vector<int> row_;
  std::vector<int> col_;
};

std::vector<std::uint32_t> identity(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

// Kuhn's augmenting-path matching on the "allowed target" bipartite graph.
bool has_perfect_matching(const BlockGrid& grid, int half) {
  const std::size_t n = grid.total();
  const Coords coords(grid);
  std::vector<std::uint32_t> match_of_target(n, kUnset);
  std::vector<std::uint32_t> seen(n, kUnset);

  auto augment = [&](auto&& self, std::size_t src, std::uint32_t stamp) -> bool {
    for (std::size_t t = 0; t < n; ++t) {
      if (coords.distance(src, t) <= half || seen[t] == stamp) continue;
      seen[t] = stamp;
      if (match_of_target[t] == kUnset || self(self, match_of_target[t], stamp)) {
        match_of_target[t] = std::uint32_t(src);
        return true;
      }
    }
    return false;
  };
  for (std::size_t src = 0; src < n; ++src) {
    if (!augment(augment, src, std::uint32_t(src))) return false;
  }
  return true;
}

constexpr std::size_t kExactFeasibilityLimit = 1024;

}  // namespace

std::string to_string(MappingStrategy strategy) {
  switch (strategy) {
    case MappingStrategy::Deneighborhood: return "deneighborhood";
    case MappingStrategy::Random: return "random";
    case MappingStrategy::Offset: return "offset";
    case MappingStrategy::Arnold: return "arnold";
  }
  return "unknown";
}

MappingStrategy parse_strategy(std::string_view name) {
  if (name == "deneighborhood") return MappingStrategy::Deneighborhood;
  if (name == "random") return MappingStrategy::Random;
  if (name == "offset") return MappingStrategy::Offset;
  if (name == "arnold") return MappingStrategy::Arnold;
  fail(ErrorKind::Parse, "unknown mapping strategy '" + std::string(name) +
                             "' (expected deneighborhood, random, offset or arnold)");
}

std::string describe(const MappingSpec& spec) {
  switch (spec.strategy) {
    case MappingStrategy::Deneighborhood:
      return "deneighborhood(r=" + std::to_string(spec.r) + ")";
    case MappingStrategy::Arnold:
      return "arnold(it=" + std::to_string(spec.arnold_iterations) + ")";
    default:
      return to_string(spec.strategy);
  }
}

BlockMapping::BlockMapping(BlockGrid grid, std::vector<std::uint32_t> forward, MappingSpec spec)
    : grid_(grid), spec_(spec), forward_(std::move(forward)), inverse_(forward_.size(), kUnset) {
  if (forward_.size() != grid_.total()) {
    fail(ErrorKind::Construction, "mapping size does not match the block grid");
  }
  for (std::size_t i = 0; i < forward_.size(); ++i) {
    if (forward_[i] < inverse_.size()) inverse_[forward_[i]] = std::uint32_t(i);
  }
}

void check_deneighborhood_feasible(const BlockGrid& grid, int r) {
  validate_radius_param(r);
  const std::size_t total = grid.total();
  if (std::size_t(r) * std::size_t(r) <= total / 2) return;
  if (total <= kExactFeasibilityLimit && has_perfect_matching(grid, (r - 1) / 2)) return;
  fail(ErrorKind::Parameter,
       "de-neighborhood mapping infeasible: r^2 = " + std::to_string(r * r) +
           " exceeds half the block count (" + std::to_string(total / 2) +
           "), Hall's condition is not guaranteed");
}

BlockMapping build_deneighborhood_mapping(std::uint64_t k3, const BlockGrid& grid, int r) {
  check_deneighborhood_feasible(grid, r);
  const std::size_t n = grid.total();
  const int half = (r - 1) / 2;
  const Coords coords(grid);

  SplitMix64 rng(k3);
  std::vector<std::uint32_t> eps = identity(n);
  seeded_shuffle(std::span(eps), rng);

  const auto ok = [&](std::size_t src, std::uint32_t dst) { return coords.distance(src, dst) > half; };

  std::vector<std::uint32_t> violators;
  for (int pass = 0; pass < kMaxRepairPasses; ++pass) {
    violators.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!ok(i, eps[i])) violators.push_back(std::uint32_t(i));
    }
    if (violators.empty()) break;
    seeded_shuffle(std::span(violators), rng);

    for (const std::uint32_t i : violators) {
      if (ok(i, eps[i])) continue;
      // Partner search: cyclic scan from a seeded random start.
      const std::size_t start = std::size_t(rng.uniform(n));
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t j = (start + t) % n;
        if (j == i) continue;
        if (ok(i, eps[j]) && ok(j, eps[i])) {
          std::swap(eps[i], eps[j]);
          break;
        }
      }
    }
  }

  std::size_t residual = 0;
  for (std::size_t i = 0; i < n; ++i) residual += ok(i, eps[i]) ? 0 : 1;
  if (residual != 0) {
    fail(ErrorKind::Construction, "de-neighborhood repair left " + std::to_string(residual) +
                                      " violations after " + std::to_string(kMaxRepairPasses) +
                                      " passes");
  }
  return BlockMapping(grid, std::move(eps), {MappingStrategy::Deneighborhood, r, 1});
}

BlockMapping build_random_mapping(std::uint64_t k3, const BlockGrid& grid) {
  const std::size_t n = grid.total();
  if (n < 2) fail(ErrorKind::Parameter, "random mapping needs at least 2 blocks");
  SplitMix64 rng(k3);
  std::vector<std::uint32_t> eps = identity(n);
  seeded_shuffle(std::span(eps), rng);
  // Swapping a fixed point with its successor never creates a new one.
  for (std::size_t i = 0; i < n; ++i) {
    if (eps[i] == i) std::swap(eps[i], eps[(i + 1) % n]);
  }
  return BlockMapping(grid, std::move(eps), {MappingStrategy::Random, 0, 1});
}

BlockMapping build_offset_mapping(const BlockGrid& grid) {
  const std::size_t n = grid.total();
  if (n % 2 != 0) {
    fail(ErrorKind::Parameter, "offset mapping needs an even number of blocks, got " +
                                   std::to_string(n));
  }
  std::vector<std::uint32_t> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = std::uint32_t((i + n / 2) % n);
  return BlockMapping(grid, std::move(eps), {MappingStrategy::Offset, 0, 1});
}

BlockMapping build_arnold_mapping(const BlockGrid& grid, int iterations) {
  if (!grid.is_square()) {
    fail(ErrorKind::Parameter, "Arnold mapping needs a square block grid");
  }
  if (iterations < 1) {
    fail(ErrorKind::Parameter, "Arnold iterations must be positive");
  }
  const int side = grid.cols();
  std::vector<std::uint32_t> eps(grid.total());
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      int x = row;
      int y = col;
      for (int it = 0; it < iterations; ++it) {
        const int nx = (x + y) % side;
        const int ny = (x + 2 * y) % side;
        x = nx;
        y = ny;
      }
      eps[grid.linear({row, col})] = std::uint32_t(grid.linear({x, y}));
    }
  }
  return BlockMapping(grid, std::move(eps), {MappingStrategy::Arnold, 0, iterations});
}

void check_mapping_feasible(const MappingSpec& spec, const BlockGrid& grid) {
  switch (spec.strategy) {
    case MappingStrategy::Deneighborhood:
      check_deneighborhood_feasible(grid, spec.r);
      return;
    case MappingStrategy::Random:
      if (grid.total() < 2) fail(ErrorKind::Parameter, "random mapping needs at least 2 blocks");
      return;
    case MappingStrategy::Offset:
      if (grid.total() % 2 != 0) {
        fail(ErrorKind::Parameter, "offset mapping needs an even number of blocks");
      }
      return;
    case MappingStrategy::Arnold:
      if (!grid.is_square()) fail(ErrorKind::Parameter, "Arnold mapping needs a square block grid");
      if (spec.arnold_iterations < 1) fail(ErrorKind::Parameter, "Arnold iterations must be positive");
      return;
  }
}

BlockMapping build_mapping(const MappingSpec& spec, std::uint64_t k3, const BlockGrid& grid) {
  switch (spec.strategy) {
    case MappingStrategy::Deneighborhood: return build_deneighborhood_mapping(k3, grid, spec.r);
    case MappingStrategy::Random: return build_random_mapping(k3, grid);
    case MappingStrategy::Offset: return build_offset_mapping(grid);
    case MappingStrategy::Arnold: return build_arnold_mapping(grid, spec.arnold_iterations);
  }
  fail(ErrorKind::Parameter, "unknown mapping strategy");
}

MappingAudit verify_mapping(const BlockMapping& mapping, const BlockGrid& grid) {
  const int r = mapping.spec().strategy == MappingStrategy::Deneighborhood ? mapping.spec().r : 0;
  return verify_mapping(mapping, grid, r);
}

MappingAudit verify_mapping(const BlockMapping& mapping, const BlockGrid& grid, int r) {
  MappingAudit audit;
  const std::size_t n = grid.total();
  if (mapping.size() != n) return audit;

  std::vector<bool> hit(n, false);
  bool bijective = true;
  int min_distance = std::numeric_limits<int>::max();
  const int half = r > 0 ? (r - 1) / 2 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t t = mapping.forward(i);
    if (t >= n || hit[t]) {
      bijective = false;
      continue;
    }
    hit[t] = true;
    const int d = chebyshev(grid.at(i), grid.at(t));
    min_distance = std::min(min_distance, d);
    if (d <= half) ++audit.violations;
  }
  audit.is_bijection = bijective;
  audit.min_chebyshev_distance = min_distance == std::numeric_limits<int>::max() ? 0 : min_distance;
  return audit;
}

void write_mapping_csv(std::ostream& out, const BlockMapping& mapping) {
  out << "i,eps_i\n";
  for (std::size_t i = 0; i < mapping.size(); ++i) out << i << ',' << mapping.forward(i) << '\n';
}

}  // namespace fragmark
