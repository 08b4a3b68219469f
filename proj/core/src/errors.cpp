#include "fragmark/errors.h"

namespace fragmark {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Construction: return "construction error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::KeyMismatch: return "key mismatch";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fragmark
