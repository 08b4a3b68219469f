#include <sstream>

#include "test_util.h"

using namespace fragmark;

TEST(Mapping, StrategyNames) {
  for (auto s : {MappingStrategy::Deneighborhood, MappingStrategy::Random, MappingStrategy::Offset,
                 MappingStrategy::Arnold}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_FRAGMARK_ERROR(parse_strategy("zigzag"), ErrorKind::Parse);
  EXPECT_EQ(describe({MappingStrategy::Deneighborhood, 101, 1}), "deneighborhood(r=101)");
}

TEST(Mapping, DeneighborhoodExhaustiveSmallGrids) {
  const BlockGrid grid(16, 16);
  for (int r : {3, 5, 7}) {
    for (std::uint64_t key = 0; key < 40; ++key) {
      const BlockMapping m = build_deneighborhood_mapping(key * 0x9E3779B97F4A7C15ULL, grid, r);
      const MappingAudit audit = verify_mapping(m, grid);
      ASSERT_TRUE(audit.is_bijection);
      EXPECT_EQ(audit.violations, 0u);
      EXPECT_GT(audit.min_chebyshev_distance, (r - 1) / 2);
      for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(m.inverse(m.forward(i)), i);
        EXPECT_GT(chebyshev(grid.at(i), grid.at(m.forward(i))), (r - 1) / 2);
      }
    }
  }
}

TEST(Mapping, DeneighborhoodDeterministicPerKey) {
  const BlockGrid grid(32, 32);
  const auto a = build_deneighborhood_mapping(1, grid, 9);
  const auto b = build_deneighborhood_mapping(1, grid, 9);
  const auto c = build_deneighborhood_mapping(2, grid, 9);
  EXPECT_EQ(a.forward_table(), b.forward_table());
  EXPECT_NE(a.forward_table(), c.forward_table());
}

TEST(Mapping, RectangularGrid) {
  const BlockGrid grid(40, 12);
  const auto m = build_deneighborhood_mapping(77, grid, 7);
  const auto audit = verify_mapping(m, grid);
  EXPECT_TRUE(audit.is_bijection);
  EXPECT_EQ(audit.violations, 0u);
}

TEST(Mapping, InfeasibleRadiusRejected) {
  EXPECT_FRAGMARK_ERROR(check_deneighborhood_feasible(BlockGrid(4, 4), 5), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(build_deneighborhood_mapping(1, BlockGrid(4, 4), 5), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(build_deneighborhood_mapping(1, BlockGrid(8, 8), 4), ErrorKind::Parameter);
  EXPECT_NO_THROW(check_deneighborhood_feasible(BlockGrid(256, 256), 181));
  EXPECT_FRAGMARK_ERROR(check_deneighborhood_feasible(BlockGrid(256, 256), 183),
                        ErrorKind::Parameter);
}

// r^2 = 9 exceeds half of 16 blocks, but a valid assignment still exists; the
// exact matching check accepts it and the builder finds one.
TEST(Mapping, SmallGridBeyondHallBoundStillBuilds) {
  const BlockGrid grid(4, 4);
  EXPECT_NO_THROW(check_deneighborhood_feasible(grid, 3));
  const auto m = build_deneighborhood_mapping(5, grid, 3);
  EXPECT_EQ(verify_mapping(m, grid).violations, 0u);
}

TEST(Mapping, RandomHasNoFixedPoints) {
  const BlockGrid grid(16, 16);
  for (std::uint64_t key = 0; key < 50; ++key) {
    const auto m = build_random_mapping(key, grid);
    const auto audit = verify_mapping(m, grid);
    EXPECT_TRUE(audit.is_bijection);
    EXPECT_EQ(audit.violations, 0u);
  }
}

TEST(Mapping, OffsetIsHalfShift) {
  const BlockGrid grid(8, 8);
  const auto m = build_offset_mapping(grid);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(m.forward(i), (i + 32) % 64);
  EXPECT_TRUE(verify_mapping(m, grid).is_bijection);
}

TEST(Mapping, ArnoldCatMap) {
  const BlockGrid grid(8, 8);
  const auto m = build_arnold_mapping(grid, 1);
  // (row, col) -> ((row + col) mod n, (row + 2 col) mod n)
  EXPECT_EQ(m.forward(grid.linear({1, 2})), grid.linear({3, 5}));
  EXPECT_EQ(m.forward(0), 0u);
  EXPECT_TRUE(verify_mapping(m, grid).is_bijection);
  // The cat map on an 8 x 8 torus has period 6.
  const auto period = build_arnold_mapping(grid, 6);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(period.forward(i), i);
  const auto three = build_arnold_mapping(grid, 3);
  bool identity = true;
  for (std::size_t i = 0; i < 64; ++i) identity &= three.forward(i) == i;
  EXPECT_FALSE(identity);
  EXPECT_FRAGMARK_ERROR(build_arnold_mapping(BlockGrid(8, 4), 1), ErrorKind::Parameter);
}

TEST(Mapping, AuditDetectsViolations) {
  const BlockGrid grid(4, 4);
  std::vector<std::uint32_t> fwd(16);
  for (std::uint32_t i = 0; i < 16; ++i) fwd[i] = (i + 1) % 16;
  const BlockMapping m(grid, fwd, {MappingStrategy::Deneighborhood, 3, 1});
  const auto audit = verify_mapping(m, grid);
  EXPECT_TRUE(audit.is_bijection);
  EXPECT_GT(audit.violations, 0u);
  EXPECT_EQ(audit.min_chebyshev_distance, 1);
}

TEST(Mapping, CsvDump) {
  const auto m = build_offset_mapping(BlockGrid(2, 2));
  std::ostringstream out;
  write_mapping_csv(out, m);
  EXPECT_EQ(out.str(), "i,eps_i\n0,2\n1,3\n2,0\n3,1\n");
}
