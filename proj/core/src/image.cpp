#include "fragmark/image.h"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "fragmark/errors.h"

namespace fragmark {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    fail(ErrorKind::Dimension, "image dimensions must be even and positive, got " +
                                   std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

int chebyshev(BlockIndex a, BlockIndex b) noexcept {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

BlockRect intersect(const BlockRect& a, const BlockRect& b) noexcept {
  return {std::max(a.row0, b.row0), std::max(a.col0, b.col0), std::min(a.row1, b.row1),
          std::min(a.col1, b.col1)};
}

BlockGrid::BlockGrid(int cols, int rows) : cols_(cols), rows_(rows) {
  if (cols <= 0 || rows <= 0) {
    fail(ErrorKind::Dimension, "block grid must have positive extent");
  }
}

GrayImage::GrayImage(int width, int height, Pixel fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(std::size_t(width) * std::size_t(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<Pixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != std::size_t(width) * std::size_t(height)) {
    fail(ErrorKind::Dimension, "pixel buffer holds " + std::to_string(pixels_.size()) +
                                   " values, expected " +
                                   std::to_string(std::size_t(width) * height));
  }
}

BlockPixels GrayImage::block(BlockIndex b) const noexcept {
  const int x = 2 * b.col;
  const int y = 2 * b.row;
  return {at(x, y), at(x + 1, y), at(x, y + 1), at(x + 1, y + 1)};
}

void GrayImage::set_block(BlockIndex b, const BlockPixels& values) noexcept {
  const int x = 2 * b.col;
  const int y = 2 * b.row;
  at(x, y) = values[0];
  at(x + 1, y) = values[1];
  at(x, y + 1) = values[2];
  at(x + 1, y + 1) = values[3];
}

BlockGrid split_into_blocks(const GrayImage& image) {
  check_dimensions(image.width(), image.height());
  return image.grid();
}

void validate_radius_param(int r) {
  if (r < 3 || r % 2 == 0) {
    fail(ErrorKind::Parameter,
         "neighborhood parameter r must be odd and >= 3, got " + std::to_string(r));
  }
}

Neighborhood::Neighborhood(BlockIndex center, int radius_param) : center_(center), r_(radius_param) {
  validate_radius_param(radius_param);
}

BlockRect Neighborhood::clipped(const BlockGrid& grid) const noexcept {
  const int h = half_width();
  return intersect({center_.row - h, center_.col - h, center_.row + h, center_.col + h},
                   grid.bounds());
}

std::int64_t neighborhood_size(BlockIndex center, int r, const BlockGrid& grid) {
  return Neighborhood(center, r).clipped(grid).area();
}

bool TamperRegion::fits(const BlockGrid& grid) const noexcept {
  if (side < 0) return false;
  if (side == 0) return grid.contains(origin) || (origin.row >= 0 && origin.col >= 0);
  return grid.contains(origin) && origin.row + side <= grid.rows() &&
         origin.col + side <= grid.cols();
}

std::vector<std::uint32_t> TamperRegion::linear_blocks(const BlockGrid& grid) const {
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t(size()));
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      out.push_back(std::uint32_t(grid.linear({origin.row + i, origin.col + j})));
    }
  }
  return out;
}

void validate_region(const TamperRegion& region, const BlockGrid& grid) {
  if (region.side < 1) {
    fail(ErrorKind::Parameter, "tamper region side must be at least 1");
  }
  if (!region.fits(grid)) {
    fail(ErrorKind::Parameter,
         "tamper region at (" + std::to_string(region.origin.row) + "," +
             std::to_string(region.origin.col) + ") with side " + std::to_string(region.side) +
             " does not fit a " + std::to_string(grid.cols()) + "x" +
             std::to_string(grid.rows()) + " block grid");
  }
}

std::int64_t region_neighborhood_intersection(const TamperRegion& region, BlockIndex center,
                                              int r, const BlockGrid& grid) {
  validate_radius_param(r);
  if (region.side <= 0) return 0;
  const BlockRect window = Neighborhood(center, r).clipped(grid);
  return intersect(intersect(window, region.rect()), grid.bounds()).area();
}

std::size_t TamperMap::count_tampered() const noexcept {
  return std::size_t(std::count(verdicts_.begin(), verdicts_.end(), Verdict::Tampered));
}

std::vector<std::uint32_t> TamperMap::tampered_blocks() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < verdicts_.size(); ++i) {
    if (verdicts_[i] == Verdict::Tampered) out.push_back(std::uint32_t(i));
  }
  return out;
}

}  // namespace fragmark
