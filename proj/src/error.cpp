#include "jointdrop/error.hpp"

namespace jointdrop {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kLineCountMismatch: return "LineCountMismatch";
    case ErrorKind::kEmptyLine: return "EmptyLine";
    case ErrorKind::kInvalidToken: return "InvalidToken";
    case ErrorKind::kMalformedLink: return "MalformedLink";
    case ErrorKind::kLinkOutOfBounds: return "LinkOutOfBounds";
    case ErrorKind::kMissingAnnotation: return "MissingAnnotation";
    case ErrorKind::kMalformedAnnotation: return "MalformedAnnotation";
    case ErrorKind::kOverlappingRecord: return "OverlappingRecord";
    case ErrorKind::kMalformedVariable: return "MalformedVariable";
    case ErrorKind::kReservedToken: return "ReservedToken";
    case ErrorKind::kMissingVocabulary: return "MissingVocabulary";
    case ErrorKind::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorKind::kMalformedCase: return "MalformedCase";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace jointdrop
