#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subgauss {

enum class ErrorCode {
  kDomain,
  kInvalidParameter,
  kUnknownFamily,
  kUnknownField,
  kMalformedJson,
  kEmptyInput,
  kMgfDivergence,
  kMomentDivergence,
  kNonCenteredModel,
  kOverflow,
  kGeneratorContract,
  kNumericFailure,
  kUsage,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain_error";
    case ErrorCode::kInvalidParameter: return "invalid_parameter";
    case ErrorCode::kUnknownFamily: return "unknown_family";
    case ErrorCode::kUnknownField: return "unknown_field";
    case ErrorCode::kMalformedJson: return "malformed_json";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kMgfDivergence: return "mgf_divergence";
    case ErrorCode::kMomentDivergence: return "moment_divergence";
    case ErrorCode::kNonCenteredModel: return "non_centered_model";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kGeneratorContract: return "generator_contract";
    case ErrorCode::kNumericFailure: return "numeric_failure";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Internal numeric failures (non-convergence, NaN) as opposed to bad input.
  bool is_internal() const noexcept { return code_ == ErrorCode::kNumericFailure; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace subgauss
