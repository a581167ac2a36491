#include "lgs/sok.hpp"

#include <array>

namespace lgs {
namespace {

constexpr std::string_view kNonceTag = "LGS-SOK-NONCE-v1";

Scalar dlog_challenge(const G1& base, const G1& public_point, const G1& commitment,
                      ByteView context) {
  ByteWriter t;
  t.text(kDlogTag).bytes(context).elem(base).elem(public_point).elem(commitment);
  return hash_to_scalar(kDlogTag, t.view());
}

bool witness_consistent(const SokStatement& s, const SokWitness& w) {
  return w.delta1 == w.x * w.alpha && w.delta2 == w.x * w.beta &&
         s.l1 == s.bases.v1() * w.alpha && s.l2 == s.bases.v2() * w.beta && s.l4 == s.u0 * w.x;
}

struct Nonces {
  Scalar alpha, beta, x, y, delta1, delta2;
};

Nonces draw_nonces(const SokStatement& s, const SokWitness& w, ByteView message,
                   EntropySource& rng, NonceMode mode) {
  if (mode == NonceMode::kRandom) {
    return {Scalar::random(rng), Scalar::random(rng), Scalar::random(rng),
            Scalar::random(rng), Scalar::random(rng), Scalar::random(rng)};
  }
  std::array<std::uint8_t, 32> fresh{};
  rng.fill(fresh);
  ByteWriter base;
  base.bytes(fresh)
      .elem(w.alpha).elem(w.beta).elem(w.x).elem(w.y).elem(w.delta1).elem(w.delta2)
      .elem(s.u0).elem(s.l1).elem(s.l2).elem(s.l3).elem(s.l4)
      .u64be(message.size()).bytes(message);
  Bytes seed = base.take();
  auto derive = [&](std::uint8_t index) {
    seed.push_back(index);
    Scalar r = hash_to_scalar(kNonceTag, seed);
    seed.pop_back();
    return r;
  };
  return {derive(0), derive(1), derive(2), derive(3), derive(4), derive(5)};
}

MembershipCommitments commit(const SokStatement& s, const Nonces& r) {
  const SokBases& b = s.bases;
  MembershipCommitments a;
  a.a1 = b.v1() * r.alpha;
  a.a2 = b.v2() * r.beta;
  a.a3 = b.e_u_omega().pow(-(r.alpha + r.beta)) * pairing(s.l3, b.g2()).pow(r.x) *
         b.e_u_g2().pow(-(r.delta1 + r.delta2)) * b.e_h_g2().pow(r.y);
  a.a4 = s.l1 * r.x - b.v1() * r.delta1;
  a.a5 = s.l2 * r.x - b.v2() * r.delta2;
  a.a6 = s.u0 * r.x;
  return a;
}

testing::ProofWithCommitments prove_impl(const SokStatement& stmt, const SokWitness& wit,
                                         ByteView message, EntropySource& rng, NonceMode mode) {
  if (!witness_consistent(stmt, wit))
    throw Error(ErrorCode::kWitnessMismatch, "membership witness does not match statement");
  const Nonces r = draw_nonces(stmt, wit, message, rng, mode);
  const MembershipCommitments a = commit(stmt, r);
  const Scalar c = membership_challenge(stmt, message, a);
  MembershipProof p{c,
                    r.alpha - c * wit.alpha,
                    r.beta - c * wit.beta,
                    r.x - c * wit.x,
                    r.y - c * wit.y,
                    r.delta1 - c * wit.delta1,
                    r.delta2 - c * wit.delta2};
  return {p, a};
}

}  // namespace

// ------------------------------------------------------------ dlog proof

Bytes DlogProof::encode() const { return ByteWriter().elem(challenge).elem(response).take(); }

DlogProof DlogProof::decode(ByteView bytes) {
  ByteReader in(bytes);
  DlogProof p{in.elem<Scalar>(), in.elem<Scalar>()};
  in.finish();
  return p;
}

DlogProof dlog_prove(const G1& base, const G1& public_point, const Scalar& y, ByteView context,
                     EntropySource& rng) {
  const Scalar r = Scalar::random(rng);
  const Scalar c = dlog_challenge(base, public_point, base * r, context);
  return {c, r - c * y};
}

bool dlog_verify(const G1& base, const G1& public_point, const DlogProof& proof,
                 ByteView context) {
  const G1 commitment = base * proof.response + public_point * proof.challenge;
  return dlog_challenge(base, public_point, commitment, context) == proof.challenge;
}

// ------------------------------------------------------ membership proof

SokBases::SokBases(const G1& g1, const G1& h, const G1& u, const G1& v1, const G1& v2,
                   const G2& g2, const G2& omega)
    : g1_(g1),
      h_(h),
      u_(u),
      v1_(v1),
      v2_(v2),
      g2_(g2),
      omega_(omega),
      e_g1_g2_(pairing(g1, g2)),
      e_u_omega_(pairing(u, omega)),
      e_u_g2_(pairing(u, g2)),
      e_h_g2_(pairing(h, g2)) {}

Bytes MembershipProof::encode() const {
  return ByteWriter()
      .elem(c).elem(z_alpha).elem(z_beta).elem(z_x).elem(z_y).elem(z_delta1).elem(z_delta2)
      .take();
}

MembershipProof MembershipProof::decode(ByteView bytes) {
  ByteReader in(bytes);
  MembershipProof p{in.elem<Scalar>(), in.elem<Scalar>(), in.elem<Scalar>(), in.elem<Scalar>(),
                    in.elem<Scalar>(), in.elem<Scalar>(), in.elem<Scalar>()};
  in.finish();
  return p;
}

Scalar membership_challenge(const SokStatement& s, ByteView message,
                            const MembershipCommitments& a) {
  ByteWriter t;
  t.text(kSokTag).u64be(message.size()).bytes(message);
  t.elem(s.l1).elem(s.l2).elem(s.l3).elem(s.l4);
  t.elem(a.a1).elem(a.a2).elem(a.a3).elem(a.a4).elem(a.a5).elem(a.a6);
  return hash_to_scalar(kSokTag, t.view());
}

MembershipProof membership_prove(const SokStatement& stmt, const SokWitness& wit,
                                 ByteView message, EntropySource& rng, NonceMode mode) {
  return prove_impl(stmt, wit, message, rng, mode).proof;
}

bool membership_verify(const SokStatement& stmt, ByteView message,
                       const MembershipProof& proof) {
  const MembershipCommitments a = testing::membership_recompute(stmt, proof);
  return membership_challenge(stmt, message, a) == proof.c;
}

namespace testing {

ProofWithCommitments membership_prove_traced(const SokStatement& stmt, const SokWitness& wit,
                                             ByteView message, EntropySource& rng) {
  return prove_impl(stmt, wit, message, rng, NonceMode::kRandom);
}

MembershipCommitments membership_recompute(const SokStatement& s, const MembershipProof& p) {
  const SokBases& b = s.bases;
  const Scalar& c = p.c;
  MembershipCommitments a;
  a.a1 = b.v1() * p.z_alpha + s.l1 * c;
  a.a2 = b.v2() * p.z_beta + s.l2 * c;
  a.a3 = b.e_u_omega().pow(-(p.z_alpha + p.z_beta)) * pairing(s.l3, b.g2()).pow(p.z_x) *
         b.e_u_g2().pow(-(p.z_delta1 + p.z_delta2)) * b.e_h_g2().pow(p.z_y) *
         (b.e_g1_g2() / pairing(s.l3, b.omega())).pow(c);
  a.a4 = s.l1 * p.z_x - b.v1() * p.z_delta1;
  a.a5 = s.l2 * p.z_x - b.v2() * p.z_delta2;
  a.a6 = s.u0 * p.z_x + s.l4 * c;
  return a;
}

}  // namespace testing

}  // namespace lgs
