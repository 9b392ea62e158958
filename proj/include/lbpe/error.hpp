#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lbpe {

enum class ErrorCode {
  kEmptyCorpus,
  kAlphabetExceedsTarget,
  kInvalidTokenId,
  kBadBuckets,
  kIoFailure,
  kFormatVersionUnsupported,
  kMalformedFile,
  kValidationFailed,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

// All library failures are reported as lbpe::Error (or a subclass) so callers
// can switch on code() without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Violation;

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

}  // namespace lbpe
