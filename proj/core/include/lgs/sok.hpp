#pragma once

// Fiat-Shamir proofs of knowledge: a Schnorr discrete-log proof (enrollment)
// and the membership signature of knowledge carried by every group signature.

#include <string_view>

#include "lgs/codec.hpp"
#include "lgs/groups.hpp"

namespace lgs {

inline constexpr std::string_view kSokTag = "LGS-SOK-v1";
inline constexpr std::string_view kDlogTag = "LGS-DLOG-v1";

// ------------------------------------------------------------ dlog proof

struct DlogProof {
  Scalar challenge;
  Scalar response;

  static constexpr std::size_t kEncodedSize = 2 * Scalar::kEncodedSize;
  Bytes encode() const;
  static DlogProof decode(ByteView bytes);
};

/// Proves knowledge of y with public = base * y, bound to `context`.
DlogProof dlog_prove(const G1& base, const G1& public_point, const Scalar& y, ByteView context,
                     EntropySource& rng);

bool dlog_verify(const G1& base, const G1& public_point, const DlogProof& proof,
                 ByteView context);

// ------------------------------------------------------ membership proof

/// Public generators of the membership relation plus the four pairing values
/// that depend only on them. Building one costs four pairings; share it.
class SokBases {
 public:
  SokBases(const G1& g1, const G1& h, const G1& u, const G1& v1, const G1& v2, const G2& g2,
           const G2& omega);

  const G1& g1() const { return g1_; }
  const G1& h() const { return h_; }
  const G1& u() const { return u_; }
  const G1& v1() const { return v1_; }
  const G1& v2() const { return v2_; }
  const G2& g2() const { return g2_; }
  const G2& omega() const { return omega_; }

  const Gt& e_g1_g2() const { return e_g1_g2_; }
  const Gt& e_u_omega() const { return e_u_omega_; }
  const Gt& e_u_g2() const { return e_u_g2_; }
  const Gt& e_h_g2() const { return e_h_g2_; }

 private:
  G1 g1_, h_, u_, v1_, v2_;
  G2 g2_, omega_;
  Gt e_g1_g2_, e_u_omega_, e_u_g2_, e_h_g2_;
};

struct SokStatement {
  const SokBases& bases;
  G1 u0;  // link base, hashed from the amount
  G1 l1, l2, l3, l4;
};

struct SokWitness {
  Scalar alpha, beta, x, y, delta1, delta2;
};

struct MembershipProof {
  Scalar c, z_alpha, z_beta, z_x, z_y, z_delta1, z_delta2;

  static constexpr std::size_t kEncodedSize = 7 * Scalar::kEncodedSize;
  /// c || z_alpha || z_beta || z_x || z_y || z_delta1 || z_delta2.
  Bytes encode() const;
  static MembershipProof decode(ByteView bytes);

  friend bool operator==(const MembershipProof&, const MembershipProof&) = default;
};

/// The six first-message values of the sigma protocol.
struct MembershipCommitments {
  G1 a1, a2;
  Gt a3;
  G1 a4, a5, a6;

  friend bool operator==(const MembershipCommitments&, const MembershipCommitments&) = default;
};

enum class NonceMode {
  kRandom,
  /// Nonces hashed from witness, statement, message and fresh entropy, so a
  /// weak or repeated rng output alone cannot leak the witness.
  kDerived,
};

/// Throws kWitnessMismatch when the witness does not satisfy the algebraic
/// side conditions (l1 = v1*alpha, l2 = v2*beta, l4 = u0*x, delta_i = x*alpha/beta).
MembershipProof membership_prove(const SokStatement& stmt, const SokWitness& wit,
                                 ByteView message, EntropySource& rng,
                                 NonceMode mode = NonceMode::kRandom);

/// Never throws on a bad proof; returns false.
bool membership_verify(const SokStatement& stmt, ByteView message, const MembershipProof& proof);

/// Challenge over "LGS-SOK-v1" || len(message) as u64be || message ||
/// l1 || l2 || l3 || l4 || a1 || ... || a6.
Scalar membership_challenge(const SokStatement& stmt, ByteView message,
                            const MembershipCommitments& a);

namespace testing {

struct ProofWithCommitments {
  MembershipProof proof;
  MembershipCommitments commitments;
};

/// Same as membership_prove but also returns the prover's a1..a6.
ProofWithCommitments membership_prove_traced(const SokStatement& stmt, const SokWitness& wit,
                                             ByteView message, EntropySource& rng);

/// The verifier's reconstruction of a1..a6 from a proof.
MembershipCommitments membership_recompute(const SokStatement& stmt,
                                           const MembershipProof& proof);

}  // namespace testing

}  // namespace lgs
