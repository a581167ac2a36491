#pragma once

// Bilinear group backend: BLS12-381 (type-3 pairing, ~128-bit security) via blst.
//
// Group elements are written additively (P + Q, P * s). Gt is written
// multiplicatively since that is how pairing products are usually read.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include <blst.h>

#include "lgs/entropy.hpp"

namespace lgs {

using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Element of Z_p, p the prime order of G1/G2/Gt. Always fully reduced.
class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  Scalar();  // zero
  static Scalar from_u64(std::uint64_t v);
  /// Uniform in [0,p): 48 random bytes reduced mod p.
  static Scalar random(EntropySource& rng);
  static Scalar random_nonzero(EntropySource& rng);
  /// Big-endian bytes of any length, reduced mod p.
  static Scalar reduce(ByteView big_endian);

  /// 32 bytes big-endian; throws kMalformedEncoding on wrong length or value >= p.
  static Scalar decode(ByteView bytes);
  Encoding encode() const;

  bool is_zero() const;
  /// Throws kInvalidArgument on zero.
  Scalar inverse() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }

  /// Constant time.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Little-endian canonical bytes, the form blst's multiplication routines take.
  blst_scalar to_blst() const;

 private:
  blst_fr value_;
};

class G1 {
 public:
  static constexpr std::size_t kEncodedSize = 48;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  G1();  // identity
  static G1 identity() { return G1(); }
  static G1 generator();
  /// Hash to curve (SSWU, expand_message_xmd/SHA-256); domain_tag must be nonempty.
  static G1 hash_to(std::string_view domain_tag, ByteView input);

  /// Compressed form. decode rejects non-canonical encodings, points off the
  /// curve and points outside the prime-order subgroup.
  static G1 decode(ByteView bytes);
  Encoding encode() const;

  bool is_identity() const;

  friend G1 operator+(const G1& a, const G1& b);
  friend G1 operator-(const G1& a, const G1& b);
  G1 operator-() const;
  friend G1 operator*(const G1& p, const Scalar& s);
  G1& operator+=(const G1& o) { return *this = *this + o; }

  friend bool operator==(const G1& a, const G1& b);

  blst_p1_affine to_affine() const;
  const blst_p1& raw() const { return point_; }
  explicit G1(const blst_p1& p) : point_(p) {}

 private:
  blst_p1 point_;
};

class G2 {
 public:
  static constexpr std::size_t kEncodedSize = 96;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  G2();  // identity
  static G2 identity() { return G2(); }
  static G2 generator();

  static G2 decode(ByteView bytes);
  Encoding encode() const;

  bool is_identity() const;

  friend G2 operator+(const G2& a, const G2& b);
  friend G2 operator-(const G2& a, const G2& b);
  G2 operator-() const;
  friend G2 operator*(const G2& p, const Scalar& s);

  friend bool operator==(const G2& a, const G2& b);

  blst_p2_affine to_affine() const;
  const blst_p2& raw() const { return point_; }
  explicit G2(const blst_p2& p) : point_(p) {}

 private:
  blst_p2 point_;
};

/// Pairing target group (order-p subgroup of Fp12*). Never deserialized; the
/// encoding exists only to feed Fiat-Shamir transcripts.
class Gt {
 public:
  static constexpr std::size_t kEncodedSize = 576;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  Gt();  // one
  static Gt one() { return Gt(); }

  /// Twelve Fp coefficients, 48 bytes big-endian each, in blst's tower order
  /// (c0.c0.c0, c0.c0.c1, c0.c1.c0, ..., c1.c2.c1).
  Encoding encode() const;

  bool is_one() const;
  Gt inverse() const;
  /// Constant-time fixed-window exponentiation.
  Gt pow(const Scalar& e) const;

  friend Gt operator*(const Gt& a, const Gt& b);
  friend Gt operator/(const Gt& a, const Gt& b) { return a * b.inverse(); }
  Gt& operator*=(const Gt& o) { return *this = *this * o; }

  friend bool operator==(const Gt& a, const Gt& b);

  explicit Gt(const blst_fp12& v) : value_(v) {}

 private:
  blst_fp12 value_;
};

Gt pairing(const G1& a, const G2& b);

/// H1 role: expand_message_xmd to 48 bytes (|p| + 128 bits), reduced mod p.
Scalar hash_to_scalar(std::string_view domain_tag, ByteView input);

/// Per-thread operation counters, read by the benchmark harness.
struct OpCounts {
  std::uint64_t pairings = 0;
  std::uint64_t g1_exps = 0;
  std::uint64_t g2_exps = 0;
  std::uint64_t gt_exps = 0;

  std::uint64_t exps() const { return g1_exps + g2_exps + gt_exps; }
  friend OpCounts operator-(const OpCounts& a, const OpCounts& b) {
    return {a.pairings - b.pairings, a.g1_exps - b.g1_exps, a.g2_exps - b.g2_exps,
            a.gt_exps - b.gt_exps};
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

OpCounts op_counts();

}  // namespace lgs
