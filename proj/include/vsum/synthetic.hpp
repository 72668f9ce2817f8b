#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "vsum/embedding.hpp"

namespace vsum {

// 64-bit FNV-1a over the raw bytes.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [-1, 1) from the top 53 bits.
  constexpr double next_signed_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }

  // Uniform in [0, bound) for bound > 0; rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

// Deterministic unit vector for a string: FNV-1a(text) XOR seed seeds a
// splitmix64 stream whose outputs become uniform [-1,1) coordinates, then the
// vector is L2-normalized. Bit-stable across platforms.
EmbeddingVector synthetic_embed(std::string_view text, std::size_t dim, std::uint64_t seed);

// "video_ref@seconds" with the timestamp rounded to milliseconds.
std::string frame_key(std::string_view video_ref, double seconds);

}  // namespace vsum
