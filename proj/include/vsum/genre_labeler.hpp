#pragma once

#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsum/kernels.hpp"
#include "vsum/providers.hpp"
#include "vsum/timeline.hpp"

namespace vsum {

// Ordered genre labels. Index order is the tie-break order everywhere.
class GenreVocabulary {
 public:
  // The 21 movie genres.
  GenreVocabulary();
  // Throws InvalidInput for an empty list, empty labels or duplicates.
  explicit GenreVocabulary(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;  // throws InvalidInput

  // Indices for the labels, sorted and deduplicated.
  std::vector<std::size_t> indices_of(std::span<const std::string> labels) const;

 private:
  std::vector<std::string> labels_;
};

const std::vector<std::string>& default_genres();

// "A photo of a {label}, a type of movie genre." Throws InvalidInput for a
// label outside the vocabulary.
std::string genre_prompt(const GenreVocabulary& vocab, std::string_view label);

// L x T cosine matrix between genre prompt and frame embeddings.
using SimilarityMatrix = kernels::Matrix;

SimilarityMatrix similarity_matrix(std::span<const EmbeddingVector> genre_vecs,
                                   std::span<const EmbeddingVector> frame_vecs);

// Temporal average pooling: mean of each genre row.
std::vector<double> pool_scene_scores(const SimilarityMatrix& m);

// Indices of the k highest scores, descending, ties by lower index. k is
// clipped to the number of scores.
std::vector<std::size_t> top_k_genres(std::span<const double> scores, std::size_t k);

// Ranked genres that the movie is annotated with, in rank order, at most cap.
std::vector<std::size_t> filter_by_movie_genres(std::span<const std::size_t> ranked,
                                                const std::set<std::size_t>& movie_genres,
                                                std::size_t cap = 3);

inline constexpr double kIneligible = -std::numeric_limits<double>::infinity();

struct GroundTruthLabel {
  std::vector<std::size_t> query;  // vocabulary indices, ascending
  std::vector<int> scenes;         // ascending
  double total_duration = 0.0;
  double budget_ratio = 0.15;
  bool warning = false;  // nothing selected
};

// Greedy duration-budgeted pick: descending confidence (ties by scene id),
// skipping scenes that would overflow ratio * total duration. Scenes with
// kIneligible confidence are never taken.
GroundTruthLabel select_gt_summary(std::span<const Scene> scenes, std::span<const double> confidence,
                                   double budget_ratio);

struct SceneGenreScores {
  int scene = 0;
  std::vector<double> scores;         // pooled confidence per vocabulary index
  std::vector<std::size_t> top;       // top-k by confidence
  std::vector<std::size_t> retained;  // top-k filtered by the movie's genres
};

// Per-scene sum of the query genres' confidences, counting a genre the scene
// did not retain as 0. Throws InvalidInput if a query genre is not one of the
// movie's genres.
std::vector<double> aggregate_multi_genre(std::span<const SceneGenreScores> table,
                                          std::span<const std::size_t> query,
                                          const std::set<std::size_t>& movie_genres);

// Confidence used for ground-truth selection: the aggregated score for scenes
// that retained at least one query genre, kIneligible otherwise.
std::vector<double> query_confidence(std::span<const SceneGenreScores> table,
                                     std::span<const std::size_t> query,
                                     const std::set<std::size_t>& movie_genres);

// Every query of 1..3 of the movie's genres, smaller sizes first, each in
// vocabulary order.
std::vector<std::vector<std::size_t>> enumerate_queries(const std::set<std::size_t>& movie_genres,
                                                        std::size_t max_size = 3);

struct LabelOptions {
  double fps = 15.0;
  double budget_ratio = 0.15;
  std::size_t top_k = 5;
  std::size_t genre_cap = 3;
};

struct VideoLabels {
  std::string video;
  double duration = 0.0;
  std::vector<std::size_t> movie_genres;  // ascending vocabulary indices
  std::vector<SceneGenreScores> scene_scores;
  std::vector<GroundTruthLabel> gt_summaries;
};

// Full labeling pass for one video: frame embeddings per scene, prompt
// embeddings, similarity, pooling, top-k, genre filtering and one ground-truth
// summary per query. Frame embeddings come from one provider call per video.
VideoLabels label_video(const std::string& video, std::span<const Scene> scenes,
                        const std::set<std::size_t>& movie_genres, const GenreVocabulary& vocab,
                        Provider& frame_embedder, Provider& text_embedder,
                        const LabelOptions& options = {});

}  // namespace vsum
