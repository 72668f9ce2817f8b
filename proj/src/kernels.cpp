#include "vsum/kernels.hpp"

#include <string>

#include "vsum/error.hpp"

namespace vsum::kernels {

namespace {

std::vector<double> checked_norms(std::span<const EmbeddingVector> vs, std::size_t dim) {
  std::vector<double> norms(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].dim() != dim) {
      throw InvalidInput("dimension mismatch: expected " + std::to_string(dim) + ", got " +
                         std::to_string(vs[i].dim()));
    }
    norms[i] = vs[i].norm();
    if (!(norms[i] > 0.0)) throw SingularInput("zero-norm vector at index " + std::to_string(i));
  }
  return norms;
}

struct Prepared {
  std::vector<double> row_norms;
  std::vector<double> col_norms;
};

Prepared prepare(std::span<const EmbeddingVector> rows, std::span<const EmbeddingVector> cols) {
  if (rows.empty() || cols.empty()) throw InvalidInput("cosine matrix needs non-empty inputs");
  const std::size_t dim = rows.front().dim();
  return {checked_norms(rows, dim), checked_norms(cols, dim)};
}

double scene_score(const SceneFeatures& scene, double visual_norm, double dialogue_norm,
                   std::span<const EmbeddingVector> genres, std::span<const double> genre_norms) {
  double total = 0.0;
  for (std::size_t l = 0; l < genres.size(); ++l) {
    double term = cosine_with_norms(scene.visual, visual_norm, genres[l], genre_norms[l]);
    if (scene.dialogue) {
      term += cosine_with_norms(*scene.dialogue, dialogue_norm, genres[l], genre_norms[l]);
    }
    total += term;
  }
  return total;
}

struct SceneNorms {
  std::vector<double> visual;
  std::vector<double> dialogue;
  std::vector<double> genre;
};

SceneNorms prepare_scenes(std::span<const SceneFeatures> scenes,
                          std::span<const EmbeddingVector> genres) {
  if (genres.empty()) throw InvalidInput("scene scoring needs at least one genre");
  const std::size_t dim = genres.front().dim();
  SceneNorms n;
  n.genre = checked_norms(genres, dim);
  n.visual.resize(scenes.size());
  n.dialogue.assign(scenes.size(), 0.0);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const auto& s = scenes[i];
    n.visual[i] = checked_norms({&s.visual, 1}, dim).front();
    if (s.dialogue) n.dialogue[i] = checked_norms({&*s.dialogue, 1}, dim).front();
  }
  return n;
}

}  // namespace

namespace serial {

Matrix cosine_matrix(std::span<const EmbeddingVector> rows, std::span<const EmbeddingVector> cols) {
  const auto p = prepare(rows, cols);
  Matrix m{rows.size(), cols.size(), std::vector<double>(rows.size() * cols.size())};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m.data[r * m.cols + c] = cosine_with_norms(rows[r], p.row_norms[r], cols[c], p.col_norms[c]);
    }
  }
  return m;
}

std::vector<double> row_means(const Matrix& m, std::size_t begin, std::size_t end) {
  if (begin >= end || end > m.cols) throw InvalidInput("empty or out-of-range column range");
  std::vector<double> out(m.rows);
  const auto count = static_cast<double>(end - begin);
  for (std::size_t r = 0; r < m.rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = begin; c < end; ++c) acc += m.at(r, c);
    out[r] = acc / count;
  }
  return out;
}

std::vector<double> scene_scores(std::span<const SceneFeatures> scenes,
                                 std::span<const EmbeddingVector> genres) {
  const auto n = prepare_scenes(scenes, genres);
  std::vector<double> out(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    out[i] = scene_score(scenes[i], n.visual[i], n.dialogue[i], genres, n.genre);
  }
  return out;
}

}  // namespace serial

namespace parallel {

Matrix cosine_matrix(std::span<const EmbeddingVector> rows, std::span<const EmbeddingVector> cols) {
  const auto p = prepare(rows, cols);
  Matrix m{rows.size(), cols.size(), std::vector<double>(rows.size() * cols.size())};
  const auto total = static_cast<std::ptrdiff_t>(m.data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto r = static_cast<std::size_t>(k) / m.cols;
    const auto c = static_cast<std::size_t>(k) % m.cols;
    m.data[k] = cosine_with_norms(rows[r], p.row_norms[r], cols[c], p.col_norms[c]);
  }
  return m;
}

std::vector<double> scene_scores(std::span<const SceneFeatures> scenes,
                                 std::span<const EmbeddingVector> genres) {
  const auto n = prepare_scenes(scenes, genres);
  std::vector<double> out(scenes.size());
  const auto count = static_cast<std::ptrdiff_t>(scenes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i] = scene_score(scenes[i], n.visual[i], n.dialogue[i], genres, n.genre);
  }
  return out;
}

}  // namespace parallel

}  // namespace vsum::kernels
