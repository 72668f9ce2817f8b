#pragma once

#include <span>
#include <vector>

namespace vsum {

// Fixed-dimension real vector with finite entries.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  // Throws InvalidInput for fewer than two values or non-finite entries.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double norm() const noexcept;
  EmbeddingVector normalized() const;  // throws SingularInput for a zero vector
  EmbeddingVector scaled(double factor) const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

// Normalized dot product. Throws SingularInput if either side has zero norm and
// InvalidInput if dimensions differ.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace vsum
