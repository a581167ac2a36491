#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace lgs {

/// Source of random bytes. Every probabilistic operation takes one explicitly
/// so callers decide between OS randomness and a reproducible stream.
class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// getrandom(2). Throws Error(kEntropyFailure) if the kernel refuses.
class SystemEntropy final : public EntropySource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// SHA-256 in counter mode over a 32-byte seed. For tests and `--seed` only;
/// anyone holding the seed can reproduce every secret drawn from it.
class DeterministicEntropy final : public EntropySource {
 public:
  explicit DeterministicEntropy(std::span<const std::uint8_t> seed);
  explicit DeterministicEntropy(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  std::array<std::uint8_t, 32> seed_{};
  std::array<std::uint8_t, 32> block_{};
  std::uint64_t counter_ = 0;
  std::size_t used_ = 32;
};

}  // namespace lgs
