#pragma once

// Linkable group signature: Setup, Join, Sign, Verify, Link, Trace.
//
// Roles: the registration authority (RA) holds gamma and issues certificates
// A = (g1 - Y) * 1/(gamma + x); the supervision authority (SA) holds the
// linear-encryption key (k1, k2) and can open signatures. The link tag
// l4 = H0(amount) * x is equal for two signatures exactly when the same
// member signed the same amount.

#include <cstdint>
#include <memory>

#include "lgs/codec.hpp"
#include "lgs/groups.hpp"
#include "lgs/linenc.hpp"
#include "lgs/registry.hpp"
#include "lgs/sok.hpp"

namespace lgs {

inline constexpr std::string_view kGroupParamsMagic = "LGSG";
inline constexpr std::string_view kRaSecretMagic = "LGSR";
inline constexpr std::string_view kSaSecretMagic = "LGSS";
inline constexpr std::string_view kMemberKeyMagic = "LGSM";
inline constexpr std::string_view kSignatureMagic = "LGS1";
inline constexpr std::string_view kJoinRequestMagic = "LGSQ";
inline constexpr std::string_view kCertMagic = "LGSC";
inline constexpr std::string_view kJoinStateMagic = "LGSP";

/// Domain tag of H0, the amount-to-G1 hash that yields the link base u0.
inline constexpr std::string_view kLinkBaseTag = "LGS-H0-v1";

/// BLS12-381, SSWU hash-to-curve, SHA-256 transcripts.
inline constexpr std::uint8_t kSuiteBls12381Sha256 = 1;

/// Group public parameters. Immutable; carries the pairing constants the
/// membership proof needs, computed once at construction.
class GroupParams {
 public:
  GroupParams(const G1& g1, const G1& h, const G1& u, const G1& v1, const G1& v2, const G2& g2,
              const G2& omega);

  const G1& g1() const { return bases_->g1(); }
  const G1& h() const { return bases_->h(); }
  const G1& u() const { return bases_->u(); }
  const G1& v1() const { return bases_->v1(); }
  const G1& v2() const { return bases_->v2(); }
  const G2& g2() const { return bases_->g2(); }
  const G2& omega() const { return bases_->omega(); }
  std::uint8_t suite() const { return kSuiteBls12381Sha256; }

  const SokBases& bases() const { return *bases_; }
  LinearPublicKey tracing_key() const { return {v1(), v2(), u()}; }

  /// "LGSG" || version || suite || g1 || h || u || v1 || v2 || g2 || omega.
  Bytes encode() const;
  /// Rejects identity generators and unknown suites.
  static GroupParams decode(ByteView bytes);

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.encode() == b.encode();
  }

 private:
  std::shared_ptr<const SokBases> bases_;
};

struct RaSecret {
  Scalar gamma;

  Bytes encode() const;
  static RaSecret decode(ByteView bytes);
};

struct SaSecret {
  LinearSecretKey key;

  Bytes encode() const;
  static SaSecret decode(ByteView bytes);
};

struct Cert {
  G1 a;
  Scalar x;

  Bytes encode() const;
  static Cert decode(ByteView bytes);

  friend bool operator==(const Cert&, const Cert&) = default;
};

/// A member's signing key: certificate plus the secret y only the member knows.
struct MemberKey {
  Cert cert;
  Scalar y;

  Bytes encode() const;
  static MemberKey decode(ByteView bytes);
};

struct JoinRequest {
  G1 y_pub;  // h * y
  DlogProof proof;

  Bytes encode() const;
  static JoinRequest decode(ByteView bytes);
};

/// What a prospective member keeps between sending the request and receiving
/// the certificate.
struct JoinState {
  Scalar y;
  JoinRequest request;

  Bytes encode() const;
  static JoinState decode(ByteView bytes);
};

struct Signature {
  G1 l1, l2, l3;  // linear encryption of the signer's A
  G1 l4;          // link tag
  MembershipProof proof;

  static constexpr std::size_t kEncodedSize =
      kSignatureMagic.size() + 1 + 4 * G1::kEncodedSize + MembershipProof::kEncodedSize;
  /// "LGS1" || version || l1 || l2 || l3 || l4 || proof.
  Bytes encode() const;
  static Signature decode(ByteView bytes);

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SetupResult {
  GroupParams gpk;
  RaSecret ra;
  SaSecret sa;
};

/// Only 128 is supported. Throws kUnsupportedSecurityLevel otherwise.
SetupResult setup(unsigned security_bits, EntropySource& rng);

/// Generators g1 and h are fixed hash outputs; u, v1, v2 come from the SA's
/// fresh linear-encryption key, omega = g2 * gamma.
GroupParams group_params_from_secrets(const RaSecret& ra, const LinearPublicKey& tracing_key);

/// Context string bound into enrollment proofs: "LGS-JOIN" || gpk encoding.
Bytes join_context(const GroupParams& gpk);

JoinState join_user_start(const GroupParams& gpk, EntropySource& rng);

/// Checks the request proof (kInvalidJoinProof) and refuses a Y already in the
/// registry (kDuplicateMember). Resamples x while gamma + x = 0 or x is taken,
/// then records (index, A, x, Y).
Cert join_ra_issue(const GroupParams& gpk, const RaSecret& ra, const JoinRequest& request,
                   Registry& registry, EntropySource& rng);

/// Checks e(A, omega + g2*x) == e(g1 - h*y, g2); kCertificateCheckFailed otherwise.
MemberKey join_user_finish(const GroupParams& gpk, const Scalar& y, const Cert& cert);

G1 link_base(ByteView amount);

Signature sign(const GroupParams& gpk, const MemberKey& mk, ByteView message, ByteView amount,
               EntropySource& rng, NonceMode nonces = NonceMode::kRandom);

bool verify(const GroupParams& gpk, ByteView message, ByteView amount, const Signature& sig);

/// Decodes then verifies; any decoding failure is a rejection.
bool verify_encoded(const GroupParams& gpk, ByteView message, ByteView amount,
                    ByteView signature);

struct SignedMessage {
  ByteView message;
  ByteView amount;
  const Signature& signature;
};

enum class LinkResult { kLinked, kUnlinked, kInvalid };

std::string_view to_string(LinkResult r);

/// kInvalid if either signature fails to verify; kLinked iff amounts are
/// byte-equal and the link tags match.
LinkResult link(const GroupParams& gpk, const SignedMessage& first, const SignedMessage& second);

/// Opens a verified signature and returns the signer's registry row.
/// Throws kSignatureInvalid or kMemberNotFound.
RegistryEntry trace(const GroupParams& gpk, const SaSecret& sa, ByteView message,
                    ByteView amount, const Signature& sig, const Registry& registry);

}  // namespace lgs
