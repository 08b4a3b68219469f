#include "fragmark/keys.h"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "fragmark/codec.h"
#include "fragmark/errors.h"

namespace fragmark {

namespace {

std::string hex16(std::uint64_t v) {
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[std::size_t(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::uint64_t parse_line(std::string_view line, int number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const std::string prefix = "K" + std::to_string(number) + "=";
  const auto where = "key file line " + std::to_string(number) + ": ";
  if (line.substr(0, prefix.size()) != prefix) {
    fail(ErrorKind::Parse, where + "expected '" + prefix + "<16 hex digits>'");
  }
  const std::string_view hex = line.substr(prefix.size());
  if (hex.size() != 16) {
    fail(ErrorKind::Parse, where + "expected 16 hex digits, got " + std::to_string(hex.size()));
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size()) {
    fail(ErrorKind::Parse, where + "invalid hex digits");
  }
  return value;
}

}  // namespace

std::string format_keys(const KeySet& keys) {
  return "K1=" + hex16(keys.k1) + "\nK2=" + hex16(keys.k2) + "\nK3=" + hex16(keys.k3) + "\n";
}

KeySet parse_keys(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && (lines.back().empty() || lines.back() == "\r")) lines.pop_back();
  if (lines.size() != 3) {
    const int missing = int(lines.size()) + 1;
    if (lines.size() < 3) {
      fail(ErrorKind::Parse, "key file line " + std::to_string(missing) + ": missing K" +
                                 std::to_string(missing));
    }
    fail(ErrorKind::Parse, "key file line 4: unexpected trailing content");
  }
  return {parse_line(lines[0], 1), parse_line(lines[1], 2), parse_line(lines[2], 3)};
}

KeySet load_keys(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open key file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_keys(buf.str());
}

void save_keys(const std::filesystem::path& path, const KeySet& keys) {
  {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write key file " + path.string());
    out << format_keys(keys);
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::permissions(
      path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
      std::filesystem::perm_options::replace, ec);
}

KeySet generate_keys() {
  std::random_device rd;
  const auto draw = [&rd] { return (std::uint64_t{rd()} << 32) | rd(); };
  KeySet keys;
  keys.k1 = draw();
  keys.k2 = draw();
  keys.k3 = draw();
  return keys;
}

std::string key_fingerprint(const KeySet& keys) {
  // Chained PRF over a fixed domain tag; reveals nothing usable about the keys.
  std::uint64_t h = prf64(0x667261676D61726BULL, keys.k1);
  h = prf64(h, keys.k2);
  h = prf64(h, keys.k3);
  return hex16(h);
}

}  // namespace fragmark
