#pragma once

#include <filesystem>
#include <iosfwd>

#include "fragmark/image.h"

namespace fragmark {

// Binary PGM (P5) with maxval 255. Header comments are accepted on read;
// write emits the minimal header "P5\n<w> <h>\n255\n".
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(const std::filesystem::path& path);

void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

// Arbitrary-size 8-bit mask writer; masks are not restricted to even sizes.
void write_pgm_raw(const std::filesystem::path& path, int width, int height,
                   const std::vector<Pixel>& pixels);

}  // namespace fragmark
