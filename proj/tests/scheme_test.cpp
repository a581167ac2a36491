#include <gtest/gtest.h>

#include "lgs/scheme.hpp"
#include "test_util.hpp"

namespace lgs {
namespace {

using test::make_group;
using test::TestGroup;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

const ByteView kMsg = as_bytes("transfer #1");
const ByteView kAmount = as_bytes("5");

TEST(Setup, ProducesConsistentKeys) {
  DeterministicEntropy rng(40);
  const SetupResult s = setup(128, rng);
  const GroupParams& gpk = s.gpk;
  EXPECT_EQ(pairing(gpk.g1(), gpk.omega()), pairing(gpk.g1(), gpk.g2()).pow(s.ra.gamma));
  EXPECT_EQ(gpk.v1() * s.sa.key.k1, gpk.u());
  EXPECT_EQ(gpk.v2() * s.sa.key.k2, gpk.u());
  EXPECT_EQ(code_of([&] { setup(80, rng); }), ErrorCode::kUnsupportedSecurityLevel);
}

TEST(Setup, IndependentRunsDiffer) {
  SystemEntropy rng;
  EXPECT_FALSE(setup(128, rng).gpk.omega() == setup(128, rng).gpk.omega());
}

TEST(Setup, KeyFilesRoundTrip) {
  DeterministicEntropy rng(41);
  const SetupResult s = setup(128, rng);
  EXPECT_EQ(GroupParams::decode(s.gpk.encode()), s.gpk);
  EXPECT_EQ(RaSecret::decode(s.ra.encode()).gamma, s.ra.gamma);
  EXPECT_EQ(SaSecret::decode(s.sa.encode()).key.k2, s.sa.key.k2);
  const Bytes gpk = s.gpk.encode();
  EXPECT_EQ(std::string(gpk.begin(), gpk.begin() + 4), "LGSG");
  EXPECT_EQ(gpk[4], kFormatVersion);
  EXPECT_EQ(code_of([&] { RaSecret::decode(gpk); }), ErrorCode::kMalformedEncoding);
}

TEST(Join, RequestCarriesValidProof) {
  DeterministicEntropy rng(42);
  const SetupResult s = setup(128, rng);
  const JoinState a = join_user_start(s.gpk, rng);
  const JoinState b = join_user_start(s.gpk, rng);
  EXPECT_EQ(a.request.y_pub, s.gpk.h() * a.y);
  EXPECT_TRUE(dlog_verify(s.gpk.h(), a.request.y_pub, a.request.proof, join_context(s.gpk)));
  EXPECT_FALSE(a.request.y_pub == b.request.y_pub);

  // y never appears in the request bytes.
  const Bytes req = a.request.encode();
  const auto y = a.y.encode();
  EXPECT_EQ(std::search(req.begin(), req.end(), y.begin(), y.end()), req.end());
  EXPECT_EQ(req.size(), 5u + 48u + 64u);
}

TEST(Join, HonestFlowAndRegistryRow) {
  DeterministicEntropy rng(43);
  const SetupResult s = setup(128, rng);
  Registry reg = Registry::in_memory();
  const JoinState st = join_user_start(s.gpk, rng);
  const Cert cert = join_ra_issue(s.gpk, s.ra, st.request, reg, rng);
  const MemberKey mk = join_user_finish(s.gpk, st.y, cert);

  // A * (gamma + x) + h * y == g1
  EXPECT_EQ(mk.cert.a * (s.ra.gamma + mk.cert.x) + s.gpk.h() * mk.y, s.gpk.g1());
  // e(A, omega + g2*x) * e(h, g2)^y == e(g1, g2)
  EXPECT_EQ(pairing(mk.cert.a, s.gpk.omega() + s.gpk.g2() * mk.cert.x) *
                pairing(s.gpk.h(), s.gpk.g2()).pow(mk.y),
            pairing(s.gpk.g1(), s.gpk.g2()));

  const auto row = reg.lookup_by_a(cert.a);
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(row->index, 1u);
  EXPECT_EQ(row->y_pub, st.request.y_pub);
  EXPECT_EQ(row->x, cert.x);
}

TEST(Join, TamperedProofAndDuplicates) {
  DeterministicEntropy rng(44);
  const SetupResult s = setup(128, rng);
  Registry reg = Registry::in_memory();
  JoinState st = join_user_start(s.gpk, rng);

  JoinRequest bad = st.request;
  bad.proof.response += Scalar::from_u64(1);
  EXPECT_EQ(code_of([&] { join_ra_issue(s.gpk, s.ra, bad, reg, rng); }),
            ErrorCode::kInvalidJoinProof);

  join_ra_issue(s.gpk, s.ra, st.request, reg, rng);
  EXPECT_EQ(code_of([&] { join_ra_issue(s.gpk, s.ra, st.request, reg, rng); }),
            ErrorCode::kDuplicateMember);
  EXPECT_EQ(reg.size(), 1u);

  // A proof made for another group does not transfer.
  const SetupResult other = setup(128, rng);
  const JoinState foreign = join_user_start(other.gpk, rng);
  EXPECT_EQ(code_of([&] { join_ra_issue(s.gpk, s.ra, foreign.request, reg, rng); }),
            ErrorCode::kInvalidJoinProof);
}

TEST(Join, FinishRejectsBadCertificates) {
  DeterministicEntropy rng(45);
  const SetupResult s = setup(128, rng);
  Registry reg = Registry::in_memory();
  const JoinState st = join_user_start(s.gpk, rng);
  const Cert cert = join_ra_issue(s.gpk, s.ra, st.request, reg, rng);

  EXPECT_EQ(code_of([&] { join_user_finish(s.gpk, st.y, {cert.a + s.gpk.g1(), cert.x}); }),
            ErrorCode::kCertificateCheckFailed);
  EXPECT_EQ(code_of([&] {
              join_user_finish(s.gpk, st.y, {cert.a, cert.x + Scalar::from_u64(1)});
            }),
            ErrorCode::kCertificateCheckFailed);
  EXPECT_EQ(code_of([&] { join_user_finish(s.gpk, st.y + Scalar::from_u64(1), cert); }),
            ErrorCode::kCertificateCheckFailed);
  EXPECT_EQ(code_of([&] { join_user_finish(s.gpk, st.y, {G1(), cert.x}); }),
            ErrorCode::kCertificateCheckFailed);
}

TEST(Sign, VerifiesAndShapesAsExpected) {
  DeterministicEntropy rng(46);
  TestGroup g = make_group(3, rng);
  const GroupParams& gpk = g.sys.gpk;
  const MemberKey& mk = g.members[1];

  const Signature a = sign(gpk, mk, kMsg, kAmount, rng);
  const Signature b = sign(gpk, mk, kMsg, kAmount, rng);
  EXPECT_TRUE(verify(gpk, kMsg, kAmount, a));
  EXPECT_TRUE(verify(gpk, kMsg, kAmount, b));
  EXPECT_FALSE(a.l1 == b.l1);
  EXPECT_FALSE(a.l2 == b.l2);
  EXPECT_FALSE(a.l3 == b.l3);
  EXPECT_EQ(a.l4, b.l4);
  EXPECT_EQ(a.l4, link_base(kAmount) * mk.cert.x);

  const Signature c = sign(gpk, mk, kMsg, as_bytes("50"), rng);
  EXPECT_FALSE(a.l4 == c.l4);

  // The escrowed certificate decrypts to A.
  EXPECT_EQ(lin_dec(g.sys.sa.key, {a.l1, a.l2, a.l3}), mk.cert.a);
}

TEST(Sign, DerivedNoncesVerify) {
  DeterministicEntropy rng(47);
  TestGroup g = make_group(3, rng);
  const Signature s = sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng, NonceMode::kDerived);
  EXPECT_TRUE(verify(g.sys.gpk, kMsg, kAmount, s));
}

TEST(Verify, RejectsMismatches) {
  DeterministicEntropy rng(48);
  TestGroup g = make_group(3, rng);
  const GroupParams& gpk = g.sys.gpk;
  const Signature s = sign(gpk, g.members[0], kMsg, kAmount, rng);

  EXPECT_FALSE(verify(gpk, kMsg, as_bytes("6"), s));
  EXPECT_FALSE(verify(gpk, as_bytes("transfer #2"), kAmount, s));
  Signature z = s;
  z.proof.z_x += Scalar::from_u64(1);
  EXPECT_FALSE(verify(gpk, kMsg, kAmount, z));
  Signature swapped = s;
  std::swap(swapped.l1, swapped.l2);
  EXPECT_FALSE(verify(gpk, kMsg, kAmount, swapped));

  // Different group, same everything else.
  TestGroup other = make_group(3, rng);
  EXPECT_FALSE(verify(other.sys.gpk, kMsg, kAmount, s));
}

TEST(Verify, BitFlipsAtComponentBoundaries) {
  DeterministicEntropy rng(49);
  TestGroup g = make_group(3, rng);
  const Signature s = sign(g.sys.gpk, g.members[2], kMsg, kAmount, rng);
  const Bytes enc = s.encode();
  ASSERT_EQ(enc.size(), Signature::kEncodedSize);
  ASSERT_TRUE(verify_encoded(g.sys.gpk, kMsg, kAmount, enc));

  // Header, four 48-byte points, seven 32-byte scalars.
  std::vector<std::pair<std::size_t, std::size_t>> parts = {{0, 5}};
  for (std::size_t i = 0; i < 4; ++i) parts.emplace_back(5 + 48 * i, 48);
  for (std::size_t i = 0; i < 7; ++i) parts.emplace_back(5 + 192 + 32 * i, 32);
  for (auto [off, len] : parts) {
    for (std::size_t bit : {std::size_t{0}, std::size_t{7}, 8 * len - 8, 8 * len - 1,
                            8 * (len / 2) + 3}) {
      Bytes t = enc;
      t[off + bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      EXPECT_FALSE(verify_encoded(g.sys.gpk, kMsg, kAmount, t)) << off << ":" << bit;
    }
  }
  EXPECT_FALSE(verify_encoded(g.sys.gpk, kMsg, kAmount, ByteView(enc).first(enc.size() - 1)));
}

TEST(Signature, WireFormat) {
  DeterministicEntropy rng(50);
  TestGroup g = make_group(3, rng);
  const Signature s = sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng);
  const Bytes enc = s.encode();
  EXPECT_EQ(std::string(enc.begin(), enc.begin() + 4), "LGS1");
  EXPECT_EQ(enc[4], 1);
  const auto l4 = s.l4.encode();
  EXPECT_TRUE(std::equal(l4.begin(), l4.end(), enc.begin() + 5 + 3 * 48));
  const Bytes proof = s.proof.encode();
  EXPECT_TRUE(std::equal(proof.begin(), proof.end(), enc.begin() + 5 + 4 * 48));
  EXPECT_EQ(Signature::decode(enc), s);
}

TEST(Link, SameMemberSameAmount) {
  DeterministicEntropy rng(51);
  TestGroup g = make_group(3, rng);
  const GroupParams& gpk = g.sys.gpk;
  const ByteView m2 = as_bytes("transfer #2");
  const Signature a = sign(gpk, g.members[0], kMsg, kAmount, rng);
  const Signature b = sign(gpk, g.members[0], m2, kAmount, rng);
  const Signature c = sign(gpk, g.members[0], m2, as_bytes("7"), rng);
  const Signature d = sign(gpk, g.members[1], m2, kAmount, rng);

  EXPECT_EQ(link(gpk, {kMsg, kAmount, a}, {m2, kAmount, b}), LinkResult::kLinked);
  EXPECT_EQ(link(gpk, {kMsg, kAmount, a}, {m2, as_bytes("7"), c}), LinkResult::kUnlinked);
  EXPECT_EQ(link(gpk, {kMsg, kAmount, a}, {m2, kAmount, d}), LinkResult::kUnlinked);
  EXPECT_FALSE(a.l4 == d.l4);
  EXPECT_EQ(link(gpk, {kMsg, kAmount, a}, {kMsg, kAmount, b}), LinkResult::kInvalid);
  EXPECT_EQ(to_string(LinkResult::kLinked), "linked");
}

TEST(Trace, FindsEverySigner) {
  DeterministicEntropy rng(52);
  TestGroup g = make_group(5, rng);
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    const Signature s = sign(g.sys.gpk, g.members[i], kMsg, kAmount, rng);
    const RegistryEntry row = trace(g.sys.gpk, g.sys.sa, kMsg, kAmount, s, g.registry);
    EXPECT_EQ(row.index, i + 1);
    EXPECT_EQ(row.a, g.members[i].cert.a);
  }
}

TEST(Trace, RefusesInvalidAndUnknown) {
  DeterministicEntropy rng(53);
  TestGroup g = make_group(3, rng);
  const Signature s = sign(g.sys.gpk, g.members[0], kMsg, kAmount, rng);
  Signature bad = s;
  bad.proof.c += Scalar::from_u64(1);
  EXPECT_EQ(code_of([&] { trace(g.sys.gpk, g.sys.sa, kMsg, kAmount, bad, g.registry); }),
            ErrorCode::kSignatureInvalid);

  // A valid signature looked up in a registry belonging to a disjoint group.
  TestGroup other = make_group(3, rng);
  EXPECT_EQ(code_of([&] { trace(g.sys.gpk, g.sys.sa, kMsg, kAmount, s, other.registry); }),
            ErrorCode::kMemberNotFound);
}

TEST(Properties, RandomizedEndToEnd) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    DeterministicEntropy rng(1000 + seed);
    const std::size_t n = 3 + seed % 8;
    TestGroup g = make_group(n, rng);
    const std::size_t i = seed % n;
    const std::string msg = "m" + std::to_string(seed);
    const std::string amount = std::to_string(seed % 4);
    const Signature s = sign(g.sys.gpk, g.members[i], as_bytes(msg), as_bytes(amount), rng);
    ASSERT_TRUE(verify(g.sys.gpk, as_bytes(msg), as_bytes(amount), s));
    ASSERT_EQ(lin_dec(g.sys.sa.key, {s.l1, s.l2, s.l3}), g.members[i].cert.a);
    ASSERT_EQ(trace(g.sys.gpk, g.sys.sa, as_bytes(msg), as_bytes(amount), s, g.registry).index,
              i + 1);
  }
}

}  // namespace
}  // namespace lgs
