#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fragmark {

using Pixel = std::uint8_t;

// Four pixels of a 2x2 block in raster order: top-left, top-right,
// bottom-left, bottom-right.
using BlockPixels = std::array<Pixel, 4>;

struct BlockIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

// Chebyshev (chessboard) distance between two blocks.
int chebyshev(BlockIndex a, BlockIndex b) noexcept;

// Inclusive rectangle of block coordinates. Empty when row0 > row1 or col0 > col1.
struct BlockRect {
  int row0 = 0;
  int col0 = 0;
  int row1 = -1;
  int col1 = -1;

  bool empty() const noexcept { return row0 > row1 || col0 > col1; }
  std::int64_t area() const noexcept {
    return empty() ? 0 : std::int64_t{row1 - row0 + 1} * (col1 - col0 + 1);
  }
  bool contains(BlockIndex b) const noexcept {
    return b.row >= row0 && b.row <= row1 && b.col >= col0 && b.col <= col1;
  }
};

BlockRect intersect(const BlockRect& a, const BlockRect& b) noexcept;

// The lattice of 2x2 blocks covering an image.
class BlockGrid {
 public:
  BlockGrid() = default;
  BlockGrid(int cols, int rows);

  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  std::size_t total() const noexcept { return std::size_t(cols_) * std::size_t(rows_); }
  bool is_square() const noexcept { return cols_ == rows_; }

  bool contains(BlockIndex b) const noexcept {
    return b.row >= 0 && b.row < rows_ && b.col >= 0 && b.col < cols_;
  }
  std::size_t linear(BlockIndex b) const noexcept {
    return std::size_t(b.row) * std::size_t(cols_) + std::size_t(b.col);
  }
  BlockIndex at(std::size_t linear_index) const noexcept {
    return {int(linear_index / std::size_t(cols_)), int(linear_index % std::size_t(cols_))};
  }
  BlockRect bounds() const noexcept { return {0, 0, rows_ - 1, cols_ - 1}; }

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;

 private:
  int cols_ = 0;
  int rows_ = 0;
};

// 8-bit grayscale image with even, positive dimensions.
class GrayImage {
 public:
  GrayImage() = default;
  // Throws a dimension error when width or height is odd or not positive.
  GrayImage(int width, int height, Pixel fill = 0);
  GrayImage(int width, int height, std::vector<Pixel> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  Pixel at(int x, int y) const noexcept { return pixels_[std::size_t(y) * width_ + x]; }
  Pixel& at(int x, int y) noexcept { return pixels_[std::size_t(y) * width_ + x]; }

  std::span<const Pixel> pixels() const noexcept { return pixels_; }
  std::span<Pixel> pixels() noexcept { return pixels_; }

  BlockGrid grid() const noexcept { return BlockGrid(width_ / 2, height_ / 2); }

  BlockPixels block(BlockIndex b) const noexcept;
  void set_block(BlockIndex b, const BlockPixels& values) noexcept;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

// Validates the image and returns its block lattice. Callers iterate blocks
// with for_each_block or GrayImage::block.
BlockGrid split_into_blocks(const GrayImage& image);

template <typename Fn>
void for_each_block(const GrayImage& image, Fn&& fn) {
  const BlockGrid grid = split_into_blocks(image);
  for (int row = 0; row < grid.rows(); ++row) {
    for (int col = 0; col < grid.cols(); ++col) {
      const BlockIndex b{row, col};
      fn(b, image.block(b));
    }
  }
}

// Square r x r window centred on a block, clipped to the grid. r must be odd, >= 3.
class Neighborhood {
 public:
  Neighborhood(BlockIndex center, int radius_param);

  BlockIndex center() const noexcept { return center_; }
  int radius_param() const noexcept { return r_; }
  int half_width() const noexcept { return (r_ - 1) / 2; }

  bool contains(BlockIndex b) const noexcept { return chebyshev(center_, b) <= half_width(); }
  BlockRect clipped(const BlockGrid& grid) const noexcept;

 private:
  BlockIndex center_;
  int r_;
};

// Throws a parameter error unless r is odd and >= 3.
void validate_radius_param(int r);

std::int64_t neighborhood_size(BlockIndex center, int r, const BlockGrid& grid);

// l x l square of blocks anchored at its top-left block.
struct TamperRegion {
  BlockIndex origin;
  int side = 0;

  BlockRect rect() const noexcept {
    return {origin.row, origin.col, origin.row + side - 1, origin.col + side - 1};
  }
  bool contains(BlockIndex b) const noexcept { return rect().contains(b); }
  std::int64_t size() const noexcept { return std::int64_t{side} * side; }
  bool fits(const BlockGrid& grid) const noexcept;
  std::vector<std::uint32_t> linear_blocks(const BlockGrid& grid) const;
};

// Throws a parameter error when the region is negative-sized or leaves the grid.
void validate_region(const TamperRegion& region, const BlockGrid& grid);

// |L ∩ R^r(center)| by rectangle intersection.
std::int64_t region_neighborhood_intersection(const TamperRegion& region, BlockIndex center,
                                              int r, const BlockGrid& grid);

enum class Verdict : std::uint8_t { Authentic, Tampered };

enum class VerdictStage : std::uint8_t { Preliminary, Refined };

class TamperMap {
 public:
  TamperMap() = default;
  TamperMap(BlockGrid grid, VerdictStage stage)
      : grid_(grid), stage_(stage), verdicts_(grid.total(), Verdict::Authentic) {}

  const BlockGrid& grid() const noexcept { return grid_; }
  VerdictStage stage() const noexcept { return stage_; }

  Verdict operator[](std::size_t i) const noexcept { return verdicts_[i]; }
  Verdict at(BlockIndex b) const noexcept { return verdicts_[grid_.linear(b)]; }
  bool tampered(std::size_t i) const noexcept { return verdicts_[i] == Verdict::Tampered; }
  void set(std::size_t i, Verdict v) noexcept { verdicts_[i] = v; }

  std::size_t size() const noexcept { return verdicts_.size(); }
  std::size_t count_tampered() const noexcept;
  std::vector<std::uint32_t> tampered_blocks() const;

 private:
  BlockGrid grid_;
  VerdictStage stage_ = VerdictStage::Preliminary;
  std::vector<Verdict> verdicts_;
};

}  // namespace fragmark
