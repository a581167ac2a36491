#include "lgs/entropy.hpp"

#include <sys/random.h>

#include <algorithm>
#include <cerrno>
#include <vector>

#include <blst.h>
#include <blst_aux.h>

#include "lgs/error.hpp"

namespace lgs {

void SystemEntropy::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    ssize_t n = ::getrandom(out.data() + done, out.size() - done, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kEntropyFailure, "getrandom failed");
    }
    done += static_cast<std::size_t>(n);
  }
}

DeterministicEntropy::DeterministicEntropy(std::span<const std::uint8_t> seed) {
  blst_sha256(seed_.data(), seed.data(), seed.size());
}

DeterministicEntropy::DeterministicEntropy(std::uint64_t seed) {
  std::array<std::uint8_t, 8> be{};
  for (int i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  blst_sha256(seed_.data(), be.data(), be.size());
}

void DeterministicEntropy::refill() {
  std::array<std::uint8_t, 40> input{};
  std::copy(seed_.begin(), seed_.end(), input.begin());
  for (int i = 0; i < 8; ++i) input[32 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  blst_sha256(block_.data(), input.data(), input.size());
  used_ = 0;
}

void DeterministicEntropy::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    if (used_ == block_.size()) refill();
    byte = block_[used_++];
  }
}

}  // namespace lgs
