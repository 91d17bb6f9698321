#pragma once

#include <stdexcept>
#include <string>

namespace jointdrop {

enum class ErrorKind {
  kLineCountMismatch,
  kEmptyLine,
  kInvalidToken,
  kMalformedLink,
  kLinkOutOfBounds,
  kMissingAnnotation,
  kMalformedAnnotation,
  kOverlappingRecord,
  kMalformedVariable,
  kReservedToken,
  kMissingVocabulary,
  kSpanOutOfBounds,
  kMalformedCase,
  kLengthMismatch,
  kEmptyInput,
  kInvalidConfig,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

// Every failure raised by the library. Io errors map to exit code 1 in the
// CLI, everything else is a validation/config error (exit code 2).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  bool is_io() const { return kind_ == ErrorKind::kIo; }

 private:
  ErrorKind kind_;
};

}  // namespace jointdrop
