#include <gtest/gtest.h>

#include "lgs/linenc.hpp"

namespace lgs {
namespace {

TEST(LinearEncryption, KeygenSatisfiesKeyRelation) {
  DeterministicEntropy rng(10);
  const LinearKeypair kp = lin_keygen(rng);
  EXPECT_EQ(kp.pub.v1 * kp.sec.k1, kp.pub.u);
  EXPECT_EQ(kp.pub.v2 * kp.sec.k2, kp.pub.u);
  EXPECT_TRUE(kp.sec.matches(kp.pub));
  EXPECT_FALSE(kp.pub.v1 == kp.pub.v2);
}

TEST(LinearEncryption, IndependentKeygensDiffer) {
  SystemEntropy rng;
  EXPECT_FALSE(lin_keygen(rng).pub.u == lin_keygen(rng).pub.u);
}

TEST(LinearEncryption, RoundTrip) {
  DeterministicEntropy rng(11);
  const LinearKeypair kp = lin_keygen(rng);
  for (int i = 0; i < 20; ++i) {
    const G1 m = G1::generator() * Scalar::random(rng);
    const auto [ct, r] = lin_enc(kp.pub, m, rng);
    EXPECT_EQ(lin_dec(kp.sec, ct), m);
    EXPECT_EQ(ct, lin_enc(kp.pub, m, r));  // returned randomness reproduces it
  }
}

TEST(LinearEncryption, ZeroRandomnessAndIdentityMessage) {
  DeterministicEntropy rng(12);
  const LinearKeypair kp = lin_keygen(rng);
  const G1 m = G1::hash_to("test", as_bytes("m"));
  const LinearCiphertext ct = lin_enc(kp.pub, m, EncryptionRandomness{Scalar(), Scalar()});
  EXPECT_TRUE(ct.c1.is_identity());
  EXPECT_TRUE(ct.c2.is_identity());
  EXPECT_EQ(ct.c3, m);
  EXPECT_EQ(lin_dec(kp.sec, LinearCiphertext{G1(), G1(), m}), m);

  const Scalar a = Scalar::random(rng), b = Scalar::random(rng);
  EXPECT_EQ(lin_enc(kp.pub, G1::identity(), {a, b}).c3, kp.pub.u * (a + b));
}

TEST(LinearEncryption, SmallExponentVector) {
  // k1 = 2, k2 = 3, alpha = beta = 1, message g1. The oracle builds every
  // element by repeated addition from a common point P:
  //   v1 = 3P, v2 = 2P, u = 6P  (so 2*v1 = 3*v2 = u)
  //   c1 = v1, c2 = v2, c3 = g1 + 2u
  const G1 p = G1::hash_to("test", as_bytes("P"));
  const G1 v1 = p + p + p;
  const G1 v2 = p + p;
  const G1 u = v1 + v1;
  ASSERT_EQ(v2 + v2 + v2, u);

  const LinearKeypair kp{{v1, v2, u}, {Scalar::from_u64(2), Scalar::from_u64(3)}};
  ASSERT_TRUE(kp.sec.matches(kp.pub));
  const LinearKeypair derived = lin_keypair_from_secret(u, Scalar::from_u64(2), Scalar::from_u64(3));
  EXPECT_EQ(derived.pub.v1, v1);
  EXPECT_EQ(derived.pub.v2, v2);

  const G1 g1 = G1::generator();
  const LinearCiphertext ct =
      lin_enc(kp.pub, g1, EncryptionRandomness{Scalar::from_u64(1), Scalar::from_u64(1)});
  EXPECT_EQ(ct.c1, v1);
  EXPECT_EQ(ct.c2, v2);
  EXPECT_EQ(ct.c3, g1 + u + u);
  EXPECT_EQ(lin_dec(kp.sec, ct), g1);
}

TEST(LinearEncryption, FreshEncryptionsDifferEverywhere) {
  DeterministicEntropy rng(13);
  const LinearKeypair kp = lin_keygen(rng);
  const G1 m = G1::generator();
  for (int i = 0; i < 10; ++i) {
    const auto a = lin_enc(kp.pub, m, rng).first;
    const auto b = lin_enc(kp.pub, m, rng).first;
    EXPECT_FALSE(a.c1 == b.c1);
    EXPECT_FALSE(a.c2 == b.c2);
    EXPECT_FALSE(a.c3 == b.c3);
  }
}

TEST(LinearEncryption, WrongKeyDoesNotDecrypt) {
  DeterministicEntropy rng(14);
  const LinearKeypair kp = lin_keygen(rng);
  const G1 m = G1::generator();
  const auto ct = lin_enc(kp.pub, m, rng).first;
  LinearSecretKey wrong = kp.sec;
  wrong.k1 += Scalar::from_u64(1);
  EXPECT_FALSE(lin_dec(wrong, ct) == m);
  EXPECT_FALSE(wrong.matches(kp.pub));
}

TEST(LinearEncryption, Encodings) {
  DeterministicEntropy rng(15);
  const LinearKeypair kp = lin_keygen(rng);
  const auto ct = lin_enc(kp.pub, G1::generator(), rng).first;
  const Bytes enc = ct.encode();
  ASSERT_EQ(enc.size(), LinearCiphertext::kEncodedSize);
  EXPECT_EQ(LinearCiphertext::decode(enc), ct);
  EXPECT_THROW(LinearCiphertext::decode(ByteView(enc).first(100)), Error);

  const Bytes pk = kp.pub.encode();
  const LinearPublicKey back = LinearPublicKey::decode(pk);
  EXPECT_EQ(back.u, kp.pub.u);
  const LinearPublicKey with_identity{kp.pub.v1, G1(), kp.pub.u};
  EXPECT_THROW(LinearPublicKey::decode(with_identity.encode()), Error);
}

}  // namespace
}  // namespace lgs
