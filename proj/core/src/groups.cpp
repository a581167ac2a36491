#include "lgs/groups.hpp"

#include <cstring>
#include <string>

#include <blst_aux.h>

#include "lgs/error.hpp"

namespace lgs {
namespace {

thread_local OpCounts g_counts;

constexpr std::size_t kScalarBits = 255;

[[noreturn]] void malformed(const char* what) { throw Error(ErrorCode::kMalformedEncoding, what); }

void check_tag(std::string_view tag) {
  if (tag.empty()) throw Error(ErrorCode::kInvalidArgument, "empty domain tag");
}

const std::uint8_t* tag_ptr(std::string_view tag) {
  return reinterpret_cast<const std::uint8_t*>(tag.data());
}

}  // namespace

OpCounts op_counts() { return g_counts; }

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() { std::memset(&value_, 0, sizeof(value_)); }

Scalar Scalar::from_u64(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar out;
  blst_fr_from_uint64(&out.value_, limbs);
  return out;
}

Scalar Scalar::random(EntropySource& rng) {
  std::array<std::uint8_t, 48> wide{};
  rng.fill(wide);
  Scalar out = reduce(wide);
  std::memset(wide.data(), 0, wide.size());
  return out;
}

Scalar Scalar::random_nonzero(EntropySource& rng) {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::reduce(ByteView big_endian) {
  blst_scalar tmp;
  blst_scalar_from_be_bytes(&tmp, big_endian.data(), big_endian.size());
  Scalar out;
  blst_fr_from_scalar(&out.value_, &tmp);
  return out;
}

Scalar Scalar::decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) malformed("scalar: wrong length");
  blst_scalar tmp;
  blst_scalar_from_bendian(&tmp, bytes.data());
  if (!blst_scalar_fr_check(&tmp)) malformed("scalar: not reduced");
  Scalar out;
  blst_fr_from_scalar(&out.value_, &tmp);
  return out;
}

Scalar::Encoding Scalar::encode() const {
  blst_scalar tmp = to_blst();
  Encoding out;
  blst_bendian_from_scalar(out.data(), &tmp);
  return out;
}

blst_scalar Scalar::to_blst() const {
  blst_scalar out;
  blst_scalar_from_fr(&out, &value_);
  return out;
}

bool Scalar::is_zero() const { return *this == Scalar(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  Scalar out;
  blst_fr_inverse(&out.value_, &value_);
  return out;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_add(&out.value_, &a.value_, &b.value_);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_sub(&out.value_, &a.value_, &b.value_);
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_mul(&out.value_, &a.value_, &b.value_);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  blst_fr_cneg(&out.value_, &value_, true);
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  // Montgomery form is canonical, so limb equality is value equality.
  const auto* x = reinterpret_cast<const std::uint8_t*>(&a.value_);
  const auto* y = reinterpret_cast<const std::uint8_t*>(&b.value_);
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < sizeof(blst_fr); ++i) diff |= x[i] ^ y[i];
  return diff == 0;
}

// ---------------------------------------------------------------- G1

G1::G1() { std::memset(&point_, 0, sizeof(point_)); }

G1 G1::generator() { return G1(*blst_p1_generator()); }

G1 G1::hash_to(std::string_view domain_tag, ByteView input) {
  check_tag(domain_tag);
  blst_p1 out;
  blst_hash_to_g1(&out, input.data(), input.size(), tag_ptr(domain_tag), domain_tag.size(),
                  nullptr, 0);
  return G1(out);
}

G1 G1::decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) malformed("G1: wrong length");
  blst_p1_affine aff;
  switch (blst_p1_uncompress(&aff, bytes.data())) {
    case BLST_SUCCESS: break;
    case BLST_POINT_NOT_ON_CURVE: throw Error(ErrorCode::kNotOnCurve, "G1: not on curve");
    case BLST_POINT_NOT_IN_GROUP: throw Error(ErrorCode::kWrongSubgroup, "G1: wrong subgroup");
    default: malformed("G1: bad encoding");
  }
  if (!blst_p1_affine_in_g1(&aff)) throw Error(ErrorCode::kWrongSubgroup, "G1: wrong subgroup");
  blst_p1 p;
  blst_p1_from_affine(&p, &aff);
  G1 out(p);
  Encoding again = out.encode();
  if (std::memcmp(again.data(), bytes.data(), kEncodedSize) != 0) malformed("G1: non-canonical");
  return out;
}

G1::Encoding G1::encode() const {
  Encoding out;
  blst_p1_compress(out.data(), &point_);
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&point_); }

G1 operator+(const G1& a, const G1& b) {
  blst_p1 out;
  blst_p1_add_or_double(&out, &a.point_, &b.point_);
  return G1(out);
}

G1 G1::operator-() const {
  blst_p1 out = point_;
  blst_p1_cneg(&out, true);
  return G1(out);
}

G1 operator-(const G1& a, const G1& b) { return a + (-b); }

G1 operator*(const G1& p, const Scalar& s) {
  ++g_counts.g1_exps;
  blst_scalar k = s.to_blst();
  blst_p1 out;
  blst_p1_mult(&out, &p.point_, k.b, kScalarBits);
  return G1(out);
}

bool operator==(const G1& a, const G1& b) { return blst_p1_is_equal(&a.point_, &b.point_); }

blst_p1_affine G1::to_affine() const {
  blst_p1_affine out;
  blst_p1_to_affine(&out, &point_);
  return out;
}

// ---------------------------------------------------------------- G2

G2::G2() { std::memset(&point_, 0, sizeof(point_)); }

G2 G2::generator() { return G2(*blst_p2_generator()); }

G2 G2::decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) malformed("G2: wrong length");
  blst_p2_affine aff;
  switch (blst_p2_uncompress(&aff, bytes.data())) {
    case BLST_SUCCESS: break;
    case BLST_POINT_NOT_ON_CURVE: throw Error(ErrorCode::kNotOnCurve, "G2: not on curve");
    case BLST_POINT_NOT_IN_GROUP: throw Error(ErrorCode::kWrongSubgroup, "G2: wrong subgroup");
    default: malformed("G2: bad encoding");
  }
  if (!blst_p2_affine_in_g2(&aff)) throw Error(ErrorCode::kWrongSubgroup, "G2: wrong subgroup");
  blst_p2 p;
  blst_p2_from_affine(&p, &aff);
  G2 out(p);
  Encoding again = out.encode();
  if (std::memcmp(again.data(), bytes.data(), kEncodedSize) != 0) malformed("G2: non-canonical");
  return out;
}

G2::Encoding G2::encode() const {
  Encoding out;
  blst_p2_compress(out.data(), &point_);
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&point_); }

G2 operator+(const G2& a, const G2& b) {
  blst_p2 out;
  blst_p2_add_or_double(&out, &a.point_, &b.point_);
  return G2(out);
}

G2 G2::operator-() const {
  blst_p2 out = point_;
  blst_p2_cneg(&out, true);
  return G2(out);
}

G2 operator-(const G2& a, const G2& b) { return a + (-b); }

G2 operator*(const G2& p, const Scalar& s) {
  ++g_counts.g2_exps;
  blst_scalar k = s.to_blst();
  blst_p2 out;
  blst_p2_mult(&out, &p.point_, k.b, kScalarBits);
  return G2(out);
}

bool operator==(const G2& a, const G2& b) { return blst_p2_is_equal(&a.point_, &b.point_); }

blst_p2_affine G2::to_affine() const {
  blst_p2_affine out;
  blst_p2_to_affine(&out, &point_);
  return out;
}

// ---------------------------------------------------------------- Gt

Gt::Gt() : value_(*blst_fp12_one()) {}

Gt::Encoding Gt::encode() const {
  Encoding out;
  blst_bendian_from_fp12(out.data(), &value_);
  return out;
}

bool Gt::is_one() const { return blst_fp12_is_one(&value_); }

Gt Gt::inverse() const {
  blst_fp12 out;
  blst_fp12_inverse(&out, &value_);
  return Gt(out);
}

Gt operator*(const Gt& a, const Gt& b) {
  blst_fp12 out;
  blst_fp12_mul(&out, &a.value_, &b.value_);
  return Gt(out);
}

bool operator==(const Gt& a, const Gt& b) { return blst_fp12_is_equal(&a.value_, &b.value_); }

namespace {

// Copies table[idx] into out while touching every entry.
void ct_select(blst_fp12& out, const blst_fp12 (&table)[16], unsigned idx) {
  constexpr std::size_t kWords = sizeof(blst_fp12) / sizeof(std::uint64_t);
  auto* dst = reinterpret_cast<std::uint64_t*>(&out);
  std::memset(dst, 0, sizeof(blst_fp12));
  for (unsigned i = 0; i < 16; ++i) {
    const std::uint64_t mask = 0 - static_cast<std::uint64_t>(((i ^ idx) - 1u) >> 31 & 1u);
    const auto* src = reinterpret_cast<const std::uint64_t*>(&table[i]);
    for (std::size_t w = 0; w < kWords; ++w) dst[w] |= src[w] & mask;
  }
}

}  // namespace

Gt Gt::pow(const Scalar& e) const {
  ++g_counts.gt_exps;
  // Every element we construct lies in the cyclotomic subgroup, so the cheaper
  // cyclotomic squaring applies.
  blst_fp12 table[16];
  table[0] = *blst_fp12_one();
  table[1] = value_;
  for (int i = 2; i < 16; ++i) blst_fp12_mul(&table[i], &table[i - 1], &value_);

  const blst_scalar k = e.to_blst();  // little-endian
  blst_fp12 acc = *blst_fp12_one();
  blst_fp12 pick;
  for (int nibble = 63; nibble >= 0; --nibble) {
    for (int s = 0; s < 4; ++s) blst_fp12_cyclotomic_sqr(&acc, &acc);
    const unsigned byte = k.b[nibble / 2];
    const unsigned idx = (nibble & 1) ? (byte >> 4) : (byte & 0x0f);
    ct_select(pick, table, idx);
    blst_fp12_mul(&acc, &acc, &pick);
  }
  return Gt(acc);
}

Gt pairing(const G1& a, const G2& b) {
  ++g_counts.pairings;
  if (a.is_identity() || b.is_identity()) return Gt::one();
  const blst_p1_affine pa = a.to_affine();
  const blst_p2_affine pb = b.to_affine();
  blst_fp12 ml, out;
  blst_miller_loop(&ml, &pb, &pa);
  blst_final_exp(&out, &ml);
  return Gt(out);
}

Scalar hash_to_scalar(std::string_view domain_tag, ByteView input) {
  check_tag(domain_tag);
  std::array<std::uint8_t, 48> wide{};
  blst_expand_message_xmd(wide.data(), wide.size(), input.data(), input.size(),
                          tag_ptr(domain_tag), domain_tag.size());
  return Scalar::reduce(wide);
}

}  // namespace lgs
