#include <doctest.h>

#include "vsum/kernels.hpp"
#include "vsum/synthetic.hpp"

using namespace vsum;

namespace {

std::vector<EmbeddingVector> batch(const std::string& prefix, int n, std::size_t dim) {
  std::vector<EmbeddingVector> out;
  for (int i = 0; i < n; ++i) out.push_back(synthetic_embed(prefix + std::to_string(i), dim, 9).scaled(1.0 + i));
  return out;
}

}  // namespace

TEST_CASE("serial and parallel cosine matrices are bit-identical") {
  const int shapes[][3] = {{1, 1, 2}, {21, 150, 64}, {7, 3, 512}};
  for (const auto& [r, c, d] : shapes) {
    const auto rows = batch("r", r, d), cols = batch("c", c, d);
    const auto a = kernels::serial::cosine_matrix(rows, cols);
    const auto b = kernels::parallel::cosine_matrix(rows, cols);
    CHECK(a.rows == b.rows);
    CHECK(a.cols == b.cols);
    CHECK(a.data == b.data);
  }
}

TEST_CASE("serial and parallel scene scores are bit-identical") {
  const auto genres = batch("g", 3, 32);
  std::vector<kernels::SceneFeatures> scenes;
  for (int i = 0; i < 40; ++i) {
    const auto v = synthetic_embed("v" + std::to_string(i), 32, 2);
    std::optional<EmbeddingVector> d;
    if (i % 3) d = synthetic_embed("d" + std::to_string(i), 32, 2);
    scenes.push_back({v, d});
  }
  CHECK(kernels::serial::scene_scores(scenes, genres) == kernels::parallel::scene_scores(scenes, genres));
}

TEST_CASE("row means over a column range") {
  kernels::Matrix m{2, 4, {1, 2, 3, 4, -1, -1, 5, 5}};
  CHECK(kernels::serial::row_means(m, 0, 4) == std::vector<double>{2.5, 2.0});
  CHECK(kernels::serial::row_means(m, 2, 4) == std::vector<double>{3.5, 5.0});
}
