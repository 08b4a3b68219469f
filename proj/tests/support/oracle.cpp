#include "oracle.h"

#include <openssl/sha.h>

#include <cstdlib>

namespace oracle {

std::uint64_t prf(std::uint64_t key, std::uint64_t input) {
  unsigned char msg[16];
  for (int b = 0; b < 8; ++b) {
    msg[b] = static_cast<unsigned char>(key >> (56 - 8 * b));
    msg[8 + b] = static_cast<unsigned char>(input >> (56 - 8 * b));
  }
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(msg, sizeof msg, digest);
  std::uint64_t out = 0;
  for (int b = 0; b < 8; ++b) out = (out << 8) | digest[b];
  return out;
}

namespace {

struct Block {
  int p[4];
};

Block read_block(const fragmark::GrayImage& img, std::size_t i) {
  const int cols = img.width() / 2;
  const int x = int(i % cols) * 2, y = int(i / cols) * 2;
  return {{img.at(x, y), img.at(x + 1, y), img.at(x, y + 1), img.at(x + 1, y + 1)}};
}

int recovery_of_content(const Block& b, std::uint64_t k1, std::size_t i) {
  const int mean = (b.p[0] / 4 + b.p[1] / 4 + b.p[2] / 4 + b.p[3] / 4) / 4;
  return mean ^ int(prf(k1, i) % 64);
}

int auth_of(int w, std::uint64_t k2) { return int(prf(k2, std::uint64_t(w)) % 4); }

int stored_auth(const Block& b) { return b.p[0] % 4; }
int stored_recovery(const Block& b) {
  return (b.p[1] % 4) * 16 + (b.p[2] % 4) * 4 + (b.p[3] % 4);
}

}  // namespace

Decision decide(const fragmark::GrayImage& image, const fragmark::KeySet& keys,
                const std::vector<std::uint32_t>& forward) {
  const std::size_t n = forward.size();
  const int cols = image.width() / 2, rows = image.height() / 2;

  auto passes_c = [&](std::size_t k) {
    const Block b = read_block(image, k);
    return stored_auth(b) == auth_of(recovery_of_content(b, keys.k1, k), keys.k2);
  };
  auto consistent = [&](std::size_t k) {
    const Block own = read_block(image, k);
    const Block holder = read_block(image, forward[k]);
    return stored_recovery(holder) == recovery_of_content(own, keys.k1, k);
  };

  Decision d;
  d.preliminary_case.resize(n);
  std::vector<bool> prelim(n);
  for (std::size_t i = 0; i < n; ++i) {
    int c;
    if (!passes_c(i)) c = 1;
    else if (consistent(i)) c = 2;
    else if (!passes_c(forward[i])) c = 3;
    else if (consistent(forward[i])) c = 4;
    else c = 5;
    d.preliminary_case[i] = c;
    prelim[i] = (c == 1 || c == 4);
  }

  d.final_case = d.preliminary_case;
  d.tampered = prelim;
  for (std::size_t i = 0; i < n; ++i) {
    if (prelim[i]) continue;
    const int row = int(i) / cols, col = int(i) % cols;
    bool near = false;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = row + dr, cc = col + dc;
        if ((dr || dc) && rr >= 0 && rr < rows && cc >= 0 && cc < cols &&
            prelim[std::size_t(rr * cols + cc)]) {
          near = true;
        }
      }
    }
    if (near) {
      d.tampered[i] = true;
      d.final_case[i] = 6;
    }
  }
  return d;
}

fragmark::GrayImage embed(const fragmark::GrayImage& image, const fragmark::KeySet& keys,
                          const std::vector<std::uint32_t>& forward) {
  fragmark::GrayImage out = image;
  const int cols = image.width() / 2;
  auto put = [&](std::size_t k, int slot, int bits) {
    const int x = int(k % cols) * 2 + slot % 2, y = int(k / cols) * 2 + slot / 2;
    out.at(x, y) = fragmark::Pixel((out.at(x, y) & ~3) | bits);
  };
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const int w = recovery_of_content(read_block(image, i), keys.k1, i);
    put(i, 0, auth_of(w, keys.k2));
    put(forward[i], 1, (w >> 4) & 3);
    put(forward[i], 2, (w >> 2) & 3);
    put(forward[i], 3, w & 3);
  }
  return out;
}

double brute_force_average_rate(int n, int r, int l, int row0, int col0) {
  const int h = (r - 1) / 2;
  const double total = double(n) * n;
  double sum = 0;
  for (int bi = row0; bi < row0 + l; ++bi) {
    for (int bj = col0; bj < col0 + l; ++bj) {
      long window = 0, overlap = 0;
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          if (std::abs(y - bi) <= h && std::abs(x - bj) <= h) {
            ++window;
            if (y >= row0 && y < row0 + l && x >= col0 && x < col0 + l) ++overlap;
          }
        }
      }
      sum += 1.0 - (double(l) * l - overlap) / (total - window);
    }
  }
  return sum / (double(l) * l);
}

}  // namespace oracle
