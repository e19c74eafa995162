#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace eoe {

/// xoshiro256++ with splitmix64 seeding. Stream r of seed k is a pure
/// function of (k, r), which is what makes batches shard-invariant.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_positive() noexcept { return 1.0 - uniform(); }
  double exponential(double rate) noexcept { return -std::log(uniform_positive()) / rate; }

  /// Uniform integer on [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint32_t below(std::uint32_t bound) noexcept {
    std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>((*this)() >> 32)) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(static_cast<std::uint32_t>((*this)() >> 32)) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// Fair coin drawn from a 64-bit buffer.
  bool coin() noexcept {
    if (bits_left_ == 0) {
      bits_ = (*this)();
      bits_left_ = 64;
    }
    const bool bit = bits_ & 1u;
    bits_ >>= 1;
    --bits_left_;
    return bit;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace eoe
