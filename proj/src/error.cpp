#include "lbpe/error.hpp"

#include "lbpe/vocabulary.hpp"

namespace lbpe {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kAlphabetExceedsTarget:
      return "AlphabetExceedsTarget";
    case ErrorCode::kInvalidTokenId:
      return "InvalidTokenId";
    case ErrorCode::kBadBuckets:
      return "BadBuckets";
    case ErrorCode::kIoFailure:
      return "IoFailure";
    case ErrorCode::kFormatVersionUnsupported:
      return "FormatVersionUnsupported";
    case ErrorCode::kMalformedFile:
      return "MalformedFile";
    case ErrorCode::kValidationFailed:
      return "ValidationFailed";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) {
    msg += "; ";
    msg += describe(v);
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::kValidationFailed, summarize(violations)),
      violations_(std::move(violations)) {}

}  // namespace lbpe
