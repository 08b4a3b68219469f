#include "fragmark/pgm_io.h"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "fragmark/errors.h"

namespace fragmark {

namespace {

void skip_whitespace_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* field) {
  skip_whitespace_and_comments(in);
  int value = 0;
  if (!(in >> value)) {
    fail(ErrorKind::Parse, std::string("PGM header: cannot read ") + field);
  }
  return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
    fail(ErrorKind::Parse, "not a binary PGM (expected P5 magic)");
  }
  const int width = read_header_int(in, "width");
  const int height = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  if (maxval != 255) {
    fail(ErrorKind::Parse, "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  if (width <= 0 || height <= 0) {
    fail(ErrorKind::Parse, "PGM header: nonpositive dimensions");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) {
    fail(ErrorKind::Parse, "PGM header: missing separator before raster");
  }
  std::vector<Pixel> pixels(std::size_t(width) * std::size_t(height));
  if (!in.read(reinterpret_cast<char*>(pixels.data()), std::streamsize(pixels.size()))) {
    fail(ErrorKind::Parse, "PGM raster truncated");
  }
  return GrayImage(width, height, std::move(pixels));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  const auto px = image.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), std::streamsize(px.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  write_pgm(out, image);
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

void write_pgm_raw(const std::filesystem::path& path, int width, int height,
                   const std::vector<Pixel>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), std::streamsize(pixels.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace fragmark
