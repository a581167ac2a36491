#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgs/error.hpp"
#include "lgs/groups.hpp"

namespace lgs {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kFormatVersion = 1;

class ByteWriter {
 public:
  ByteWriter& bytes(ByteView b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
    return *this;
  }
  ByteWriter& text(std::string_view s) { return bytes(as_bytes(s)); }
  ByteWriter& u8(std::uint8_t v) {
    buf_.push_back(v);
    return *this;
  }
  ByteWriter& u32be(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  ByteWriter& u64be(std::uint64_t v) {
    for (int i = 7; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  template <class T>
  ByteWriter& elem(const T& e) {
    const auto enc = e.encode();
    return bytes(enc);
  }
  ByteWriter& header(std::string_view magic) { return text(magic).u8(kFormatVersion); }

  const Bytes& view() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

/// Reads fixed-width fields; every short read or leftover byte is kMalformedEncoding.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  ByteView take(std::size_t n) {
    if (data_.size() - pos_ < n) throw Error(ErrorCode::kMalformedEncoding, "truncated input");
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32be() {
    std::uint32_t v = 0;
    for (auto b : take(4)) v = (v << 8) | b;
    return v;
  }
  std::uint64_t u64be() {
    std::uint64_t v = 0;
    for (auto b : take(8)) v = (v << 8) | b;
    return v;
  }
  template <class T>
  T elem() {
    return T::decode(take(T::kEncodedSize));
  }
  void header(std::string_view magic) {
    ByteView got = take(magic.size());
    if (!std::equal(got.begin(), got.end(), as_bytes(magic).begin()))
      throw Error(ErrorCode::kMalformedEncoding, "bad magic, expected " + std::string(magic));
    if (u8() != kFormatVersion) throw Error(ErrorCode::kMalformedEncoding, "unsupported version");
  }
  void finish() const {
    if (pos_ != data_.size()) throw Error(ErrorCode::kMalformedEncoding, "trailing bytes");
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace lgs
