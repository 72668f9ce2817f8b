#include "vsum/embedding.hpp"

#include <cmath>
#include <string>

#include "vsum/error.hpp"

namespace vsum {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidInput("embedding dimension must be at least 2");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("embedding contains a non-finite value");
  }
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double EmbeddingVector::norm() const noexcept { return std::sqrt(dot(values_, values_)); }

EmbeddingVector EmbeddingVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw SingularInput("cannot normalize a zero vector");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] / n;
  return EmbeddingVector(std::move(out));
}

EmbeddingVector EmbeddingVector::scaled(double factor) const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] * factor;
  return EmbeddingVector(std::move(out));
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                       std::to_string(b.dim()));
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw SingularInput("cosine of a zero-norm vector");
  return dot(a.values(), b.values()) / (na * nb);
}

}  // namespace vsum
