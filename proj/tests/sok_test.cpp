#include <gtest/gtest.h>

#include <optional>

#include "lgs/linenc.hpp"
#include "lgs/sok.hpp"

namespace lgs {
namespace {

// A standalone membership instance: an RA secret, a certificate (A, x, y)
// and the encryption randomness, wired up without the lgs layer.
struct Instance {
  std::optional<SokBases> bases;
  G1 u0, l1, l2, l3, l4;
  SokWitness wit;

  SokStatement statement() const { return {*bases, u0, l1, l2, l3, l4}; }
};

Instance make_instance(EntropySource& rng) {
  Instance in;
  const G1 g1 = G1::hash_to("sok-test", as_bytes("g1"));
  const G1 h = G1::hash_to("sok-test", as_bytes("h"));
  const G2 g2 = G2::generator();
  const Scalar gamma = Scalar::random_nonzero(rng);
  const LinearKeypair lk = lin_keygen(rng);
  in.bases.emplace(g1, h, lk.pub.u, lk.pub.v1, lk.pub.v2, g2, g2 * gamma);

  const Scalar x = Scalar::random_nonzero(rng), y = Scalar::random_nonzero(rng);
  const G1 a = (g1 - h * y) * (gamma + x).inverse();
  in.u0 = G1::hash_to("sok-test", as_bytes("amount"));
  const auto [ct, r] = lin_enc(lk.pub, a, rng);
  in.l1 = ct.c1;
  in.l2 = ct.c2;
  in.l3 = ct.c3;
  in.l4 = in.u0 * x;
  in.wit = {r.alpha, r.beta, x, y, x * r.alpha, x * r.beta};
  return in;
}

const ByteView kMessage = as_bytes("pay 5 to bob");

TEST(DlogProof, CompletenessAndBinding) {
  DeterministicEntropy rng(20);
  const G1 base = G1::hash_to("dlog", as_bytes("h"));
  const Scalar y = Scalar::random(rng);
  const G1 pub = base * y;
  const DlogProof proof = dlog_prove(base, pub, y, as_bytes("A"), rng);
  EXPECT_TRUE(dlog_verify(base, pub, proof, as_bytes("A")));
  EXPECT_FALSE(dlog_verify(base, pub + base, proof, as_bytes("A")));
  EXPECT_FALSE(dlog_verify(base, pub, proof, as_bytes("B")));
  EXPECT_FALSE(dlog_verify(base, pub, {proof.challenge, proof.response + Scalar::from_u64(1)},
                           as_bytes("A")));
  EXPECT_EQ(DlogProof::decode(proof.encode()).response, proof.response);
}

TEST(DlogProof, WrongWitnessFails) {
  DeterministicEntropy rng(21);
  const G1 base = G1::generator();
  const Scalar y = Scalar::random(rng);
  const DlogProof proof = dlog_prove(base, base * y, y + Scalar::from_u64(1), {}, rng);
  EXPECT_FALSE(dlog_verify(base, base * y, proof, {}));
}

TEST(MembershipProof, Completeness) {
  DeterministicEntropy rng(22);
  for (int i = 0; i < 5; ++i) {
    const Instance in = make_instance(rng);
    const MembershipProof p = membership_prove(in.statement(), in.wit, kMessage, rng);
    EXPECT_TRUE(membership_verify(in.statement(), kMessage, p));
  }
}

TEST(MembershipProof, FreshRandomnessGivesDistinctValidProofs) {
  DeterministicEntropy rng(23);
  const Instance in = make_instance(rng);
  const MembershipProof a = membership_prove(in.statement(), in.wit, kMessage, rng);
  const MembershipProof b = membership_prove(in.statement(), in.wit, kMessage, rng);
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(membership_verify(in.statement(), kMessage, a));
  EXPECT_TRUE(membership_verify(in.statement(), kMessage, b));
}

TEST(MembershipProof, DerivedNoncesVerify) {
  DeterministicEntropy rng(24);
  const Instance in = make_instance(rng);
  const MembershipProof p =
      membership_prove(in.statement(), in.wit, kMessage, rng, NonceMode::kDerived);
  EXPECT_TRUE(membership_verify(in.statement(), kMessage, p));
}

TEST(MembershipProof, WitnessMismatchIsRejected) {
  DeterministicEntropy rng(25);
  const Instance in = make_instance(rng);
  SokWitness bad = in.wit;
  bad.delta1 += Scalar::from_u64(1);
  try {
    membership_prove(in.statement(), bad, kMessage, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWitnessMismatch);
  }
  bad = in.wit;
  bad.x += Scalar::from_u64(1);
  EXPECT_THROW(membership_prove(in.statement(), bad, kMessage, rng), Error);
}

TEST(MembershipProof, CommitmentsReconstructExactly) {
  DeterministicEntropy rng(26);
  for (int i = 0; i < 5; ++i) {
    const Instance in = make_instance(rng);
    const auto traced = testing::membership_prove_traced(in.statement(), in.wit, kMessage, rng);
    const MembershipCommitments again = testing::membership_recompute(in.statement(), traced.proof);
    EXPECT_EQ(again.a1, traced.commitments.a1);
    EXPECT_EQ(again.a2, traced.commitments.a2);
    EXPECT_TRUE(again.a3 == traced.commitments.a3);
    EXPECT_EQ(again.a4, traced.commitments.a4);
    EXPECT_EQ(again.a5, traced.commitments.a5);
    EXPECT_EQ(again.a6, traced.commitments.a6);
  }
}

TEST(MembershipProof, StatementBinding) {
  DeterministicEntropy rng(27);
  const Instance in = make_instance(rng);
  const MembershipProof p = membership_prove(in.statement(), in.wit, kMessage, rng);
  const G1 bump = G1::generator();

  auto rejects = [&](Instance changed, ByteView msg = kMessage) {
    return !membership_verify(changed.statement(), msg, p);
  };
  Instance c = in;
  c.l1 += bump;
  EXPECT_TRUE(rejects(c));
  c = in;
  c.l2 += bump;
  EXPECT_TRUE(rejects(c));
  c = in;
  c.l3 += bump;
  EXPECT_TRUE(rejects(c));
  c = in;
  c.l4 += bump;
  EXPECT_TRUE(rejects(c));
  c = in;
  c.u0 += bump;
  EXPECT_TRUE(rejects(c));
  EXPECT_TRUE(rejects(in, as_bytes("pay 5 to bot")));
}

TEST(MembershipProof, ForeignLinkTagIsRejected) {
  DeterministicEntropy rng(28);
  const Instance in = make_instance(rng);
  const MembershipProof p = membership_prove(in.statement(), in.wit, kMessage, rng);
  Instance other = in;
  other.l4 = in.u0 * (in.wit.x + Scalar::from_u64(1));
  EXPECT_FALSE(membership_verify(other.statement(), kMessage, p));
}

TEST(MembershipProof, RandomProofsAreRejected) {
  DeterministicEntropy rng(29);
  const Instance in = make_instance(rng);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    const MembershipProof p{Scalar::random(rng), Scalar::random(rng), Scalar::random(rng),
                            Scalar::random(rng), Scalar::random(rng), Scalar::random(rng),
                            Scalar::random(rng)};
    accepted += membership_verify(in.statement(), kMessage, p);
  }
  EXPECT_EQ(accepted, 0);
}

TEST(MembershipProof, WireFormat) {
  DeterministicEntropy rng(30);
  const Instance in = make_instance(rng);
  const MembershipProof p = membership_prove(in.statement(), in.wit, kMessage, rng);
  const Bytes enc = p.encode();
  ASSERT_EQ(enc.size(), 7u * 32u);
  const auto c = p.c.encode();
  EXPECT_TRUE(std::equal(c.begin(), c.end(), enc.begin()));
  const auto zd2 = p.z_delta2.encode();
  EXPECT_TRUE(std::equal(zd2.begin(), zd2.end(), enc.begin() + 6 * 32));
  EXPECT_EQ(MembershipProof::decode(enc), p);
}

TEST(MembershipProof, ChallengeTranscriptLayout) {
  // Rebuild the transcript by hand and hash it with the public H1.
  DeterministicEntropy rng(31);
  const Instance in = make_instance(rng);
  const auto traced = testing::membership_prove_traced(in.statement(), in.wit, kMessage, rng);
  Bytes t(kSokTag.begin(), kSokTag.end());
  for (int i = 7; i >= 0; --i) t.push_back(static_cast<std::uint8_t>(kMessage.size() >> (8 * i)));
  t.insert(t.end(), kMessage.begin(), kMessage.end());
  auto put = [&](const auto& e) {
    const auto enc = e.encode();
    t.insert(t.end(), enc.begin(), enc.end());
  };
  put(in.l1), put(in.l2), put(in.l3), put(in.l4);
  const auto& a = traced.commitments;
  put(a.a1), put(a.a2), put(a.a3), put(a.a4), put(a.a5), put(a.a6);
  EXPECT_EQ(hash_to_scalar(kSokTag, t), traced.proof.c);
}

}  // namespace
}  // namespace lgs
