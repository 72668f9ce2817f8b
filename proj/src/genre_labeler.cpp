#include "vsum/genre_labeler.hpp"

#include <algorithm>
#include <numeric>

#include "vsum/error.hpp"
#include "vsum/semantic_analyzer.hpp"

namespace vsum {

const std::vector<std::string>& default_genres() {
  static const std::vector<std::string> kGenres = {
      "Action",  "Animation", "Biography", "Comedy",    "Crime",       "Drama", "Family",
      "Fantasy", "Horror",    "Mystery",   "Romantic",  "SciFi",       "Thriller", "History",
      "Western", "Adventure", "Sports",    "Documentary", "Music",     "Musical", "War"};
  return kGenres;
}

GenreVocabulary::GenreVocabulary() : labels_(default_genres()) {}

GenreVocabulary::GenreVocabulary(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidInput("genre vocabulary is empty");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InvalidInput("empty genre label");
    if (!seen.insert(l).second) throw InvalidInput("duplicate genre label '" + l + "'");
  }
}

bool GenreVocabulary::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t GenreVocabulary::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidInput("unknown genre '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> GenreVocabulary::indices_of(std::span<const std::string> labels) const {
  std::set<std::size_t> out;
  for (const auto& l : labels) out.insert(index_of(l));
  return {out.begin(), out.end()};
}

std::string genre_prompt(const GenreVocabulary& vocab, std::string_view label) {
  if (!vocab.contains(label)) throw InvalidInput("unknown genre '" + std::string(label) + "'");
  return "A photo of a " + std::string(label) + ", a type of movie genre.";
}

SimilarityMatrix similarity_matrix(std::span<const EmbeddingVector> genre_vecs,
                                   std::span<const EmbeddingVector> frame_vecs) {
  return kernels::parallel::cosine_matrix(genre_vecs, frame_vecs);
}

std::vector<double> pool_scene_scores(const SimilarityMatrix& m) {
  return kernels::serial::row_means(m, 0, m.cols);
}

std::vector<std::size_t> top_k_genres(std::span<const double> scores, std::size_t k) {
  if (k == 0) throw InvalidInput("top-k needs k >= 1");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                    });
  idx.resize(k);
  return idx;
}

std::vector<std::size_t> filter_by_movie_genres(std::span<const std::size_t> ranked,
                                                const std::set<std::size_t>& movie_genres,
                                                std::size_t cap) {
  std::vector<std::size_t> out;
  for (auto g : ranked) {
    if (out.size() == cap) break;
    if (movie_genres.count(g)) out.push_back(g);
  }
  return out;
}

GroundTruthLabel select_gt_summary(std::span<const Scene> scenes, std::span<const double> confidence,
                                   double budget_ratio) {
  if (!(budget_ratio > 0.0 && budget_ratio <= 1.0)) throw InvalidInput("budget ratio must be in (0, 1]");
  if (confidence.size() != scenes.size()) throw InvalidInput("one confidence per scene required");
  double video_duration = 0.0;
  for (const auto& s : scenes) video_duration += s.span.duration();
  const double budget = budget_ratio * video_duration + 1e-9;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (confidence[i] != kIneligible) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return confidence[a] > confidence[b] ||
           (confidence[a] == confidence[b] && scenes[a].id < scenes[b].id);
  });

  GroundTruthLabel label;
  label.budget_ratio = budget_ratio;
  for (auto i : order) {
    const double d = scenes[i].span.duration();
    if (label.total_duration + d > budget) continue;
    label.total_duration += d;
    label.scenes.push_back(scenes[i].id);
  }
  std::sort(label.scenes.begin(), label.scenes.end());
  label.warning = label.scenes.empty();
  return label;
}

namespace {

void check_query(std::span<const std::size_t> query, const std::set<std::size_t>& movie_genres) {
  if (query.empty()) throw InvalidInput("empty genre query");
  for (auto g : query) {
    if (!movie_genres.count(g)) {
      throw InvalidInput("query genre index " + std::to_string(g) + " is not a movie genre");
    }
  }
}

}  // namespace

std::vector<double> aggregate_multi_genre(std::span<const SceneGenreScores> table,
                                          std::span<const std::size_t> query,
                                          const std::set<std::size_t>& movie_genres) {
  check_query(query, movie_genres);
  std::vector<double> out(table.size(), 0.0);
  for (std::size_t s = 0; s < table.size(); ++s) {
    const auto& retained = table[s].retained;
    for (auto g : query) {
      if (std::find(retained.begin(), retained.end(), g) != retained.end()) {
        out[s] += table[s].scores.at(g);
      }
    }
  }
  return out;
}

std::vector<double> query_confidence(std::span<const SceneGenreScores> table,
                                     std::span<const std::size_t> query,
                                     const std::set<std::size_t>& movie_genres) {
  auto out = aggregate_multi_genre(table, query, movie_genres);
  for (std::size_t s = 0; s < table.size(); ++s) {
    const auto& retained = table[s].retained;
    const bool any = std::any_of(query.begin(), query.end(), [&](std::size_t g) {
      return std::find(retained.begin(), retained.end(), g) != retained.end();
    });
    if (!any) out[s] = kIneligible;
  }
  return out;
}

std::vector<std::vector<std::size_t>> enumerate_queries(const std::set<std::size_t>& movie_genres,
                                                        std::size_t max_size) {
  const std::vector<std::size_t> g(movie_genres.begin(), movie_genres.end());
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  // Depth-first over index combinations of a fixed size.
  auto rec = [&](auto&& self, std::size_t start, std::size_t size) -> void {
    if (current.size() == size) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < g.size(); ++i) {
      current.push_back(g[i]);
      self(self, i + 1, size);
      current.pop_back();
    }
  };
  for (std::size_t size = 1; size <= std::min(max_size, g.size()); ++size) rec(rec, 0, size);
  return out;
}

VideoLabels label_video(const std::string& video, std::span<const Scene> scenes,
                        const std::set<std::size_t>& movie_genres, const GenreVocabulary& vocab,
                        Provider& frame_embedder, Provider& text_embedder,
                        const LabelOptions& options) {
  if (scenes.empty()) throw InvalidInput("video '" + video + "' has no scenes");
  if (movie_genres.empty()) throw InvalidInput("video '" + video + "' has no movie genres");
  for (auto g : movie_genres) {
    if (g >= vocab.size()) throw InvalidInput("movie genre index out of range");
  }

  VideoLabels labels;
  labels.video = video;
  labels.duration = scenes.back().span.end();
  labels.movie_genres.assign(movie_genres.begin(), movie_genres.end());

  FrameRequest request{video, labels.duration, {}};
  std::vector<std::size_t> offsets{0};
  for (const auto& s : scenes) {
    auto ts = sampling_schedule(s, options.fps);
    request.timestamps.insert(request.timestamps.end(), ts.begin(), ts.end());
    offsets.push_back(request.timestamps.size());
  }
  const auto frames = frame_embedder.embed_frames(request);

  std::vector<std::string> prompts;
  prompts.reserve(vocab.size());
  for (const auto& label : vocab.labels()) prompts.push_back(genre_prompt(vocab, label));
  const auto genre_vecs = text_embedder.embed_texts(prompts);

  const auto matrix = similarity_matrix(genre_vecs, frames);
  labels.scene_scores.resize(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    auto& row = labels.scene_scores[i];
    row.scene = scenes[i].id;
    row.scores = kernels::serial::row_means(matrix, offsets[i], offsets[i + 1]);
    row.top = top_k_genres(row.scores, options.top_k);
    row.retained = filter_by_movie_genres(row.top, movie_genres, options.genre_cap);
  }

  for (const auto& query : enumerate_queries(movie_genres)) {
    auto conf = query_confidence(labels.scene_scores, query, movie_genres);
    auto gt = select_gt_summary(scenes, conf, options.budget_ratio);
    gt.query = query;
    labels.gt_summaries.push_back(std::move(gt));
  }
  return labels;
}

}  // namespace vsum
