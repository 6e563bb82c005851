#pragma once

#include <array>
#include <cstdint>

namespace kuramoto {

/// Philox4x32-10 counter-based generator. A stream is addressed by
/// (seed, stream): the same pair always yields the same sequence, so
/// parallel workers can draw from per-sample streams without coordination.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    const std::uint64_t out = buf_[have_];
    return out;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [-half_width, half_width).
  double next_symmetric(double half_width) { return (2.0 * next_double() - 1.0) * half_width; }

private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint64_t, 2> buf_{};
  int have_ = 0;
};

}  // namespace kuramoto
