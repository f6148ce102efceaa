#pragma once

#include <stdexcept>
#include <string>

namespace keysel {

// Coarse error classes. The service maps them onto HTTP statuses and the CLI
// onto exit codes.
enum class ErrorCode {
  kInvalidArgument,  // caller supplied a value outside the contract
  kNotFound,
  kConflict,
  kData,  // malformed or insufficient input data
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kData: return "data_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace keysel
