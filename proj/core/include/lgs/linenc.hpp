#pragma once

// Linear encryption over G1: a two-generator ElGamal variant, IND-CPA under
// Decision Linear. Used to escrow a member certificate inside each signature.

#include <utility>

#include "lgs/codec.hpp"
#include "lgs/groups.hpp"

namespace lgs {

struct LinearPublicKey {
  G1 v1, v2, u;

  static constexpr std::size_t kEncodedSize = 3 * G1::kEncodedSize;
  Bytes encode() const;
  /// Rejects identity components.
  static LinearPublicKey decode(ByteView bytes);
};

struct LinearSecretKey {
  Scalar k1, k2;

  /// v1 * k1 == u and v2 * k2 == u, both keys nonzero.
  bool matches(const LinearPublicKey& pk) const;
};

struct LinearKeypair {
  LinearPublicKey pub;
  LinearSecretKey sec;
};

struct LinearCiphertext {
  G1 c1, c2, c3;

  static constexpr std::size_t kEncodedSize = 3 * G1::kEncodedSize;
  /// c1 || c2 || c3, compressed.
  Bytes encode() const;
  static LinearCiphertext decode(ByteView bytes);

  friend bool operator==(const LinearCiphertext&, const LinearCiphertext&) = default;
};

/// The (alpha, beta) pair an encryption used; signing reuses it as a witness.
struct EncryptionRandomness {
  Scalar alpha, beta;
};

/// u is hashed from a fresh seed; v1 = u / k1 and v2 = u / k2 so that nobody
/// learns log(v1, v2).
LinearKeypair lin_keygen(EntropySource& rng);

/// Builds the keypair for fixed nonzero (k1, k2) over a given u.
LinearKeypair lin_keypair_from_secret(const G1& u, const Scalar& k1, const Scalar& k2);

LinearCiphertext lin_enc(const LinearPublicKey& pk, const G1& msg,
                         const EncryptionRandomness& r);

std::pair<LinearCiphertext, EncryptionRandomness> lin_enc(const LinearPublicKey& pk,
                                                          const G1& msg, EntropySource& rng);

/// c3 - (c1 * k1 + c2 * k2). Unauthenticated: garbage in, garbage out.
G1 lin_dec(const LinearSecretKey& sk, const LinearCiphertext& ct);

}  // namespace lgs
