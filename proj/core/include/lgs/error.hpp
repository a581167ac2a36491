#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgs {

enum class ErrorCode {
  kInvalidArgument,
  kEntropyFailure,
  kMalformedEncoding,
  kNotOnCurve,
  kWrongSubgroup,
  kUnsupportedSecurityLevel,
  kWitnessMismatch,
  kInvalidJoinProof,
  kDuplicateMember,
  kCertificateCheckFailed,
  kSignatureInvalid,
  kMemberNotFound,
  kDuplicateA,
  kDuplicateY,
  kStorageFailure,
  kCorruptRegistry,
};

// Stable identifier, e.g. "MalformedEncoding". The CLI prints these on stderr.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lgs
