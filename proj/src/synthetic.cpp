#include "vsum/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "vsum/error.hpp"

namespace vsum {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) noexcept {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

EmbeddingVector synthetic_embed(std::string_view text, std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw InvalidInput("synthetic embedding dimension must be at least 2");
  SplitMix64 rng(fnv1a64(text) ^ seed);
  std::vector<double> v(dim);
  double sq = 0.0;
  for (auto& x : v) {
    x = rng.next_signed_unit();
    sq += x * x;
  }
  // All-zero output needs 53 zero bits in every coordinate; treat as impossible.
  const double n = std::sqrt(sq);
  for (auto& x : v) x /= n;
  return EmbeddingVector(std::move(v));
}

std::string frame_key(std::string_view video_ref, double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "@%.3f", seconds);
  return std::string(video_ref) + buf;
}

}  // namespace vsum
