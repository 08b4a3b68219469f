#pragma once

#include <iosfwd>

namespace fragmark::cli {

// Exit codes. Every error category maps to exactly one code.
enum ExitCode : int {
  kOk = 0,
  kTampered = 1,          // verify found tampered blocks; audit found violations
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kDimension = 5,
  kParameter = 6,
  kConstruction = 7,
  kDomain = 8,
  kKeyMismatch = 9,
  kCellFailed = 10,
  kInternal = 70,
};

// Runs the command line; never throws. Tables and summaries go to `out`,
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fragmark::cli
