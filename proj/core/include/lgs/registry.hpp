#pragma once

// The registration list kept by the registration authority and read by the
// supervision authority when tracing.
//
// On disk: "LGSREG1" then rows of  u32be length || row || u32be CRC32(row),
// row = u64be index || A (48) || x (32) || Y (48) || i64be issued_at (unix µs).

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "lgs/codec.hpp"
#include "lgs/groups.hpp"

namespace lgs {

struct RegistryEntry {
  std::uint64_t index = 0;  // dense, from 1
  G1 a;
  Scalar x;
  G1 y_pub;
  std::int64_t issued_at = 0;

  static constexpr std::size_t kEncodedSize =
      8 + G1::kEncodedSize + Scalar::kEncodedSize + G1::kEncodedSize + 8;
  Bytes encode() const;
  static RegistryEntry decode(ByteView bytes);

  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

/// Thread-safe: one writer, any number of concurrent readers.
class Registry {
 public:
  enum class OpenMode { kCreateIfMissing, kMustExist };

  static constexpr std::string_view kMagic = "LGSREG1";

  /// Replays the log. Throws kCorruptRegistry on a bad magic, CRC, index gap or
  /// duplicate key, kStorageFailure on I/O errors.
  static Registry open(const std::filesystem::path& path,
                       OpenMode mode = OpenMode::kCreateIfMissing);
  static Registry in_memory();

  Registry(Registry&&) noexcept;
  Registry& operator=(Registry&&) noexcept;
  ~Registry();

  /// Assigns the next index and fsyncs the row before returning it.
  /// Throws kDuplicateA, kDuplicateY or kStorageFailure.
  std::uint64_t append(const G1& a, const Scalar& x, const G1& y_pub,
                       std::optional<std::int64_t> issued_at = std::nullopt);

  std::optional<RegistryEntry> lookup_by_a(const G1& a) const;
  std::optional<RegistryEntry> lookup_by_y(const G1& y_pub) const;
  bool contains_x(const Scalar& x) const;

  std::vector<RegistryEntry> entries() const;
  std::size_t size() const;

 private:
  struct Impl;
  explicit Registry(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace lgs
