#include "lgs/scheme.hpp"

namespace lgs {
namespace {

constexpr std::string_view kGeneratorTag = "LGS-GEN-v1";

void check_generators(const G1& g1, const G1& h, const G1& u, const G1& v1, const G1& v2,
                      const G2& g2, const G2& omega) {
  if (g1.is_identity() || h.is_identity() || u.is_identity() || v1.is_identity() ||
      v2.is_identity() || g2.is_identity() || omega.is_identity())
    throw Error(ErrorCode::kInvalidArgument, "group parameter is the identity");
}

SokStatement statement_for(const GroupParams& gpk, ByteView amount, const Signature& sig) {
  return {gpk.bases(), link_base(amount), sig.l1, sig.l2, sig.l3, sig.l4};
}

}  // namespace

// ------------------------------------------------------------ formats

GroupParams::GroupParams(const G1& g1, const G1& h, const G1& u, const G1& v1, const G1& v2,
                         const G2& g2, const G2& omega) {
  check_generators(g1, h, u, v1, v2, g2, omega);
  bases_ = std::make_shared<const SokBases>(g1, h, u, v1, v2, g2, omega);
}

Bytes GroupParams::encode() const {
  return ByteWriter()
      .header(kGroupParamsMagic)
      .u8(suite())
      .elem(g1()).elem(h()).elem(u()).elem(v1()).elem(v2())
      .elem(g2()).elem(omega())
      .take();
}

GroupParams GroupParams::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kGroupParamsMagic);
  if (in.u8() != kSuiteBls12381Sha256) throw Error(ErrorCode::kMalformedEncoding, "unknown suite");
  const G1 g1 = in.elem<G1>(), h = in.elem<G1>(), u = in.elem<G1>(), v1 = in.elem<G1>(),
           v2 = in.elem<G1>();
  const G2 g2 = in.elem<G2>(), omega = in.elem<G2>();
  in.finish();
  try {
    return GroupParams(g1, h, u, v1, v2, g2, omega);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedEncoding, e.what());
  }
}

Bytes RaSecret::encode() const { return ByteWriter().header(kRaSecretMagic).elem(gamma).take(); }

RaSecret RaSecret::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kRaSecretMagic);
  RaSecret s{in.elem<Scalar>()};
  in.finish();
  if (s.gamma.is_zero()) throw Error(ErrorCode::kMalformedEncoding, "zero RA secret");
  return s;
}

Bytes SaSecret::encode() const {
  return ByteWriter().header(kSaSecretMagic).elem(key.k1).elem(key.k2).take();
}

SaSecret SaSecret::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kSaSecretMagic);
  SaSecret s{{in.elem<Scalar>(), in.elem<Scalar>()}};
  in.finish();
  if (s.key.k1.is_zero() || s.key.k2.is_zero())
    throw Error(ErrorCode::kMalformedEncoding, "zero SA secret");
  return s;
}

Bytes Cert::encode() const { return ByteWriter().header(kCertMagic).elem(a).elem(x).take(); }

Cert Cert::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kCertMagic);
  Cert c{in.elem<G1>(), in.elem<Scalar>()};
  in.finish();
  return c;
}

Bytes MemberKey::encode() const {
  return ByteWriter().header(kMemberKeyMagic).elem(cert.a).elem(cert.x).elem(y).take();
}

MemberKey MemberKey::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kMemberKeyMagic);
  MemberKey k{{in.elem<G1>(), in.elem<Scalar>()}, in.elem<Scalar>()};
  in.finish();
  return k;
}

Bytes JoinRequest::encode() const {
  return ByteWriter()
      .header(kJoinRequestMagic)
      .elem(y_pub)
      .elem(proof.challenge)
      .elem(proof.response)
      .take();
}

JoinRequest JoinRequest::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kJoinRequestMagic);
  JoinRequest r{in.elem<G1>(), {in.elem<Scalar>(), in.elem<Scalar>()}};
  in.finish();
  return r;
}

Bytes JoinState::encode() const {
  return ByteWriter()
      .header(kJoinStateMagic)
      .elem(y)
      .elem(request.y_pub)
      .elem(request.proof.challenge)
      .elem(request.proof.response)
      .take();
}

JoinState JoinState::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kJoinStateMagic);
  JoinState s{in.elem<Scalar>(), {in.elem<G1>(), {in.elem<Scalar>(), in.elem<Scalar>()}}};
  in.finish();
  return s;
}

Bytes Signature::encode() const {
  ByteWriter w;
  w.header(kSignatureMagic).elem(l1).elem(l2).elem(l3).elem(l4).bytes(proof.encode());
  return w.take();
}

Signature Signature::decode(ByteView bytes) {
  ByteReader in(bytes);
  in.header(kSignatureMagic);
  Signature s{in.elem<G1>(), in.elem<G1>(), in.elem<G1>(), in.elem<G1>(),
              MembershipProof::decode(in.take(MembershipProof::kEncodedSize))};
  in.finish();
  return s;
}

// ------------------------------------------------------------ algorithms

GroupParams group_params_from_secrets(const RaSecret& ra, const LinearPublicKey& tracing_key) {
  const G2 g2 = G2::generator();
  return GroupParams(G1::hash_to(kGeneratorTag, as_bytes("g1")),
                     G1::hash_to(kGeneratorTag, as_bytes("h")), tracing_key.u, tracing_key.v1,
                     tracing_key.v2, g2, g2 * ra.gamma);
}

SetupResult setup(unsigned security_bits, EntropySource& rng) {
  if (security_bits != 128)
    throw Error(ErrorCode::kUnsupportedSecurityLevel,
                "unsupported security level " + std::to_string(security_bits));
  RaSecret ra{Scalar::random_nonzero(rng)};
  LinearKeypair sa = lin_keygen(rng);
  return {group_params_from_secrets(ra, sa.pub), ra, SaSecret{sa.sec}};
}

Bytes join_context(const GroupParams& gpk) {
  return ByteWriter().text("LGS-JOIN").bytes(gpk.encode()).take();
}

JoinState join_user_start(const GroupParams& gpk, EntropySource& rng) {
  const Scalar y = Scalar::random_nonzero(rng);
  const G1 y_pub = gpk.h() * y;
  return {y, {y_pub, dlog_prove(gpk.h(), y_pub, y, join_context(gpk), rng)}};
}

Cert join_ra_issue(const GroupParams& gpk, const RaSecret& ra, const JoinRequest& request,
                   Registry& registry, EntropySource& rng) {
  if (request.y_pub.is_identity() ||
      !dlog_verify(gpk.h(), request.y_pub, request.proof, join_context(gpk)))
    throw Error(ErrorCode::kInvalidJoinProof, "join request proof does not verify");
  if (registry.lookup_by_y(request.y_pub))
    throw Error(ErrorCode::kDuplicateMember, "Y is already enrolled");

  Scalar x;
  do {
    x = Scalar::random_nonzero(rng);
  } while ((ra.gamma + x).is_zero() || registry.contains_x(x));

  const G1 a = (gpk.g1() - request.y_pub) * (ra.gamma + x).inverse();
  registry.append(a, x, request.y_pub);
  return {a, x};
}

MemberKey join_user_finish(const GroupParams& gpk, const Scalar& y, const Cert& cert) {
  const Gt lhs = pairing(cert.a, gpk.omega() + gpk.g2() * cert.x);
  const Gt rhs = pairing(gpk.g1() - gpk.h() * y, gpk.g2());
  if (cert.a.is_identity() || !(lhs == rhs))
    throw Error(ErrorCode::kCertificateCheckFailed, "certificate does not match the key");
  return {cert, y};
}

G1 link_base(ByteView amount) { return G1::hash_to(kLinkBaseTag, amount); }

Signature sign(const GroupParams& gpk, const MemberKey& mk, ByteView message, ByteView amount,
               EntropySource& rng, NonceMode nonces) {
  const G1 u0 = link_base(amount);
  const auto [ct, r] = lin_enc(gpk.tracing_key(), mk.cert.a, rng);
  const Scalar& x = mk.cert.x;

  Signature sig{ct.c1, ct.c2, ct.c3, u0 * x, {}};
  const SokStatement stmt{gpk.bases(), u0, sig.l1, sig.l2, sig.l3, sig.l4};
  const SokWitness wit{r.alpha, r.beta, x, mk.y, x * r.alpha, x * r.beta};
  sig.proof = membership_prove(stmt, wit, message, rng, nonces);
  return sig;
}

bool verify(const GroupParams& gpk, ByteView message, ByteView amount, const Signature& sig) {
  return membership_verify(statement_for(gpk, amount, sig), message, sig.proof);
}

bool verify_encoded(const GroupParams& gpk, ByteView message, ByteView amount,
                    ByteView signature) {
  try {
    return verify(gpk, message, amount, Signature::decode(signature));
  } catch (const Error&) {
    return false;
  }
}

std::string_view to_string(LinkResult r) {
  switch (r) {
    case LinkResult::kLinked: return "linked";
    case LinkResult::kUnlinked: return "unlinked";
    case LinkResult::kInvalid: return "invalid";
  }
  return "invalid";
}

LinkResult link(const GroupParams& gpk, const SignedMessage& first,
                const SignedMessage& second) {
  if (!verify(gpk, first.message, first.amount, first.signature) ||
      !verify(gpk, second.message, second.amount, second.signature))
    return LinkResult::kInvalid;
  const bool same_amount = std::equal(first.amount.begin(), first.amount.end(),
                                      second.amount.begin(), second.amount.end());
  return same_amount && first.signature.l4 == second.signature.l4 ? LinkResult::kLinked
                                                                   : LinkResult::kUnlinked;
}

RegistryEntry trace(const GroupParams& gpk, const SaSecret& sa, ByteView message,
                    ByteView amount, const Signature& sig, const Registry& registry) {
  if (!verify(gpk, message, amount, sig))
    throw Error(ErrorCode::kSignatureInvalid, "refusing to trace an invalid signature");
  const G1 a = lin_dec(sa.key, {sig.l1, sig.l2, sig.l3});
  auto entry = registry.lookup_by_a(a);
  if (!entry) throw Error(ErrorCode::kMemberNotFound, "decrypted certificate is not registered");
  return *entry;
}

}  // namespace lgs
