#include "lgs/linenc.hpp"

#include <array>

namespace lgs {

namespace {
constexpr std::string_view kGeneratorTag = "LGS-LINENC-U-v1";
}

Bytes LinearPublicKey::encode() const { return ByteWriter().elem(v1).elem(v2).elem(u).take(); }

LinearPublicKey LinearPublicKey::decode(ByteView bytes) {
  ByteReader in(bytes);
  LinearPublicKey pk{in.elem<G1>(), in.elem<G1>(), in.elem<G1>()};
  in.finish();
  if (pk.v1.is_identity() || pk.v2.is_identity() || pk.u.is_identity())
    throw Error(ErrorCode::kMalformedEncoding, "linear public key has an identity component");
  return pk;
}

bool LinearSecretKey::matches(const LinearPublicKey& pk) const {
  return !k1.is_zero() && !k2.is_zero() && pk.v1 * k1 == pk.u && pk.v2 * k2 == pk.u;
}

Bytes LinearCiphertext::encode() const { return ByteWriter().elem(c1).elem(c2).elem(c3).take(); }

LinearCiphertext LinearCiphertext::decode(ByteView bytes) {
  ByteReader in(bytes);
  LinearCiphertext ct{in.elem<G1>(), in.elem<G1>(), in.elem<G1>()};
  in.finish();
  return ct;
}

LinearKeypair lin_keypair_from_secret(const G1& u, const Scalar& k1, const Scalar& k2) {
  if (u.is_identity()) throw Error(ErrorCode::kInvalidArgument, "u is the identity");
  LinearKeypair kp;
  kp.pub = {u * k1.inverse(), u * k2.inverse(), u};
  kp.sec = {k1, k2};
  return kp;
}

LinearKeypair lin_keygen(EntropySource& rng) {
  for (;;) {
    std::array<std::uint8_t, 32> seed{};
    rng.fill(seed);
    const G1 u = G1::hash_to(kGeneratorTag, seed);
    if (u.is_identity()) continue;
    return lin_keypair_from_secret(u, Scalar::random_nonzero(rng), Scalar::random_nonzero(rng));
  }
}

LinearCiphertext lin_enc(const LinearPublicKey& pk, const G1& msg,
                         const EncryptionRandomness& r) {
  return {pk.v1 * r.alpha, pk.v2 * r.beta, msg + pk.u * (r.alpha + r.beta)};
}

std::pair<LinearCiphertext, EncryptionRandomness> lin_enc(const LinearPublicKey& pk,
                                                          const G1& msg, EntropySource& rng) {
  EncryptionRandomness r{Scalar::random(rng), Scalar::random(rng)};
  return {lin_enc(pk, msg, r), r};
}

G1 lin_dec(const LinearSecretKey& sk, const LinearCiphertext& ct) {
  return ct.c3 - (ct.c1 * sk.k1 + ct.c2 * sk.k2);
}

}  // namespace lgs
