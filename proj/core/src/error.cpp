#include "lgs/error.hpp"

namespace lgs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEntropyFailure: return "EntropyFailure";
    case ErrorCode::kMalformedEncoding: return "MalformedEncoding";
    case ErrorCode::kNotOnCurve: return "NotOnCurve";
    case ErrorCode::kWrongSubgroup: return "WrongSubgroup";
    case ErrorCode::kUnsupportedSecurityLevel: return "UnsupportedSecurityLevel";
    case ErrorCode::kWitnessMismatch: return "WitnessMismatch";
    case ErrorCode::kInvalidJoinProof: return "InvalidJoinProof";
    case ErrorCode::kDuplicateMember: return "DuplicateMember";
    case ErrorCode::kCertificateCheckFailed: return "CertificateCheckFailed";
    case ErrorCode::kSignatureInvalid: return "SignatureInvalid";
    case ErrorCode::kMemberNotFound: return "MemberNotFound";
    case ErrorCode::kDuplicateA: return "DuplicateA";
    case ErrorCode::kDuplicateY: return "DuplicateY";
    case ErrorCode::kStorageFailure: return "StorageFailure";
    case ErrorCode::kCorruptRegistry: return "CorruptRegistry";
  }
  return "Unknown";
}

}  // namespace lgs
