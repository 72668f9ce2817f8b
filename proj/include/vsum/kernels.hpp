#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vsum/embedding.hpp"

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both evaluate each output element with the same scalar
// expression, so their results are bit-identical.
namespace vsum::kernels {

// Row-major rows x cols matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

// Per-scene pair of summary embeddings; dialogue may be absent.
struct SceneFeatures {
  EmbeddingVector visual;
  std::optional<EmbeddingVector> dialogue;
};

namespace serial {

// out(r, c) = cos(rows[r], cols[c]).
Matrix cosine_matrix(std::span<const EmbeddingVector> rows, std::span<const EmbeddingVector> cols);

// Mean of each row over the column range [begin, end).
std::vector<double> row_means(const Matrix& m, std::size_t begin, std::size_t end);

// Sum over genres of cos(visual, g) + cos(dialogue, g) for every scene.
std::vector<double> scene_scores(std::span<const SceneFeatures> scenes,
                                 std::span<const EmbeddingVector> genres);

}  // namespace serial

namespace parallel {

Matrix cosine_matrix(std::span<const EmbeddingVector> rows, std::span<const EmbeddingVector> cols);

std::vector<double> scene_scores(std::span<const SceneFeatures> scenes,
                                 std::span<const EmbeddingVector> genres);

}  // namespace parallel

// Scalar building block shared by both variants. Norms are passed in so the
// matrix kernels compute them once per vector.
inline double cosine_with_norms(const EmbeddingVector& a, double norm_a, const EmbeddingVector& b,
                                double norm_b) noexcept {
  return dot(a.values(), b.values()) / (norm_a * norm_b);
}

}  // namespace vsum::kernels
