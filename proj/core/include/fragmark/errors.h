#pragma once

#include <stdexcept>
#include <string>

namespace fragmark {

// Every failure raised by the library carries one of these categories. The
// CLI maps each category onto a distinct exit code.
enum class ErrorKind {
  Dimension,     // image sizes that cannot be split into 2x2 blocks, mismatched sizes
  Parameter,     // r, region, strategy or count outside its valid domain
  Construction,  // a mapping could not be built even though parameters looked feasible
  Domain,        // a mathematical quantity is undefined for the given inputs
  Io,            // file could not be opened, read or written
  Parse,         // malformed key file, PGM header, sidecar or CLI value
  KeyMismatch,   // sidecar fingerprint does not match the supplied keys
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace fragmark
