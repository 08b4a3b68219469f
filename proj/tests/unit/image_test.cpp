#include <set>

#include "test_util.h"

using namespace fragmark;

TEST(GrayImage, RejectsOddOrEmptyDimensions) {
  EXPECT_FRAGMARK_ERROR(GrayImage(3, 4), ErrorKind::Dimension);
  EXPECT_FRAGMARK_ERROR(GrayImage(4, 5), ErrorKind::Dimension);
  EXPECT_FRAGMARK_ERROR(GrayImage(0, 4), ErrorKind::Dimension);
  EXPECT_FRAGMARK_ERROR(GrayImage(4, 4, std::vector<Pixel>(15)), ErrorKind::Dimension);
}

TEST(GrayImage, BlockRasterOrder) {
  GrayImage img(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) img.at(x, y) = Pixel(y * 4 + x);
  const BlockPixels b = img.block({1, 1});
  EXPECT_EQ(b, (BlockPixels{10, 11, 14, 15}));
  img.set_block({0, 1}, {1, 2, 3, 4});
  EXPECT_EQ(img.at(2, 0), 1);
  EXPECT_EQ(img.at(3, 0), 2);
  EXPECT_EQ(img.at(2, 1), 3);
  EXPECT_EQ(img.at(3, 1), 4);
}

TEST(BlockGrid, SplitCountsBlocks) {
  const GrayImage img(512, 256);
  const BlockGrid g = split_into_blocks(img);
  EXPECT_EQ(g.cols(), 256);
  EXPECT_EQ(g.rows(), 128);
  EXPECT_EQ(g.total(), 256u * 128u);
  EXPECT_FALSE(g.is_square());
  for (std::size_t i : {0u, 1u, 255u, 256u, 32767u}) EXPECT_EQ(g.linear(g.at(i)), i);
}

TEST(BlockGrid, ForEachBlockVisitsEachOnce) {
  const GrayImage img = random_image(8, 6, 1);
  std::set<std::pair<int, int>> seen;
  for_each_block(img, [&](BlockIndex b, const BlockPixels& px) {
    seen.insert({b.row, b.col});
    EXPECT_EQ(px, img.block(b));
  });
  EXPECT_EQ(seen.size(), 12u);
}

TEST(Neighborhood, ValidatesRadius) {
  EXPECT_FRAGMARK_ERROR(Neighborhood({0, 0}, 4), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(Neighborhood({0, 0}, 1), ErrorKind::Parameter);
  EXPECT_NO_THROW(Neighborhood({0, 0}, 3));
}

TEST(Neighborhood, ClippedSizeMatchesEnumeration) {
  const BlockGrid grid(9, 7);
  for (int r : {3, 5, 7, 9, 11}) {
    for (int row = 0; row < grid.rows(); ++row) {
      for (int col = 0; col < grid.cols(); ++col) {
        const Neighborhood nb({row, col}, r);
        std::int64_t count = 0;
        for (std::size_t k = 0; k < grid.total(); ++k) count += nb.contains(grid.at(k));
        EXPECT_EQ(neighborhood_size({row, col}, r, grid), count);
        EXPECT_EQ(nb.clipped(grid).area(), count);
      }
    }
  }
}

TEST(Neighborhood, InteriorSizeIsRSquared) {
  EXPECT_EQ(neighborhood_size({100, 100}, 21, BlockGrid(256, 256)), 441);
  EXPECT_EQ(neighborhood_size({0, 0}, 5, BlockGrid(256, 256)), 9);
}

TEST(TamperRegion, IntersectionMatchesEnumeration) {
  const BlockGrid grid(12, 12);
  const TamperRegion region{{2, 3}, 5};
  for (int r : {3, 5, 9}) {
    for (std::size_t k = 0; k < grid.total(); ++k) {
      const BlockIndex c = grid.at(k);
      std::int64_t count = 0;
      for (const auto idx : region.linear_blocks(grid)) {
        count += chebyshev(c, grid.at(idx)) <= (r - 1) / 2;
      }
      EXPECT_EQ(region_neighborhood_intersection(region, c, r, grid), count);
    }
  }
}

TEST(TamperRegion, ValidatesPlacement) {
  const BlockGrid grid(8, 8);
  EXPECT_NO_THROW(validate_region({{6, 6}, 2}, grid));
  EXPECT_FRAGMARK_ERROR(validate_region({{7, 6}, 2}, grid), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(validate_region({{0, 0}, 0}, grid), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(validate_region({{-1, 0}, 1}, grid), ErrorKind::Parameter);
  EXPECT_EQ(TamperRegion({{1, 1}, 3}).size(), 9);
}

TEST(TamperMap, CountsAndLists) {
  TamperMap m(BlockGrid(4, 4), VerdictStage::Preliminary);
  m.set(3, Verdict::Tampered);
  m.set(9, Verdict::Tampered);
  EXPECT_EQ(m.count_tampered(), 2u);
  EXPECT_EQ(m.tampered_blocks(), (std::vector<std::uint32_t>{3, 9}));
  EXPECT_EQ(m.at({2, 1}), Verdict::Tampered);
}
