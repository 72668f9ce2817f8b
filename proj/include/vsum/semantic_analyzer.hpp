#pragma once

#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsum/kernels.hpp"
#include "vsum/providers.hpp"
#include "vsum/timeline.hpp"

namespace vsum {

inline constexpr double kDefaultFps = 15.0;

// scene.start + k / fps for every k with the result strictly below scene.end.
// Always contains scene.start.
std::vector<double> sampling_schedule(const Scene& scene, double fps);

enum class SummaryMode { kSummarize, kMostFrequent };

SummaryMode parse_summary_mode(std::string_view name);  // "summarize" | "most-frequent"
std::string_view to_string(SummaryMode mode) noexcept;

// Modal string; ties go to the one seen first.
std::string most_frequent(std::span<const std::string> captions);

std::string scene_visual_summary(std::span<const std::string> captions, SummaryMode mode,
                                 Provider& summarizer);

// Summary of the chronologically joined cues that intersect the scene, or
// nullopt when none does.
std::optional<std::string> scene_dialogue_text(std::span<const CaptionCue> cues, const Scene& scene,
                                               Provider& summarizer);

struct SceneText {
  int scene = 0;
  std::string visual_summary;
  std::optional<std::string> dialogue_summary;

  friend bool operator==(const SceneText&, const SceneText&) = default;
};

struct SceneTextOptions {
  double fps = kDefaultFps;
  SummaryMode mode = SummaryMode::kSummarize;
};

// Captions every sampled frame of the video in one call, then summarizes the
// captions and dialogue of each scene.
std::vector<SceneText> build_scene_texts(const std::string& video, std::span<const Scene> scenes,
                                         std::span<const CaptionCue> cues, Provider& captioner,
                                         Provider& summarizer, const SceneTextOptions& options = {});

struct SaliencyScore {
  int scene = 0;
  double score = 0.0;

  friend bool operator==(const SaliencyScore&, const SaliencyScore&) = default;
};

// Sum over genres of cos(visual, g) + cos(dialogue, g); an absent dialogue
// contributes nothing. Throws SingularInput for zero vectors.
double score_scene(const EmbeddingVector& visual, const std::optional<EmbeddingVector>& dialogue,
                   std::span<const EmbeddingVector> genre_vecs);

// Genre name -> text embedding. At most one provider call per distinct genre
// over the cache's lifetime, including under concurrent lookups. A disabled
// cache forwards every lookup to the provider.
class GenreFeatureCache {
 public:
  explicit GenreFeatureCache(Provider& text_embedder, bool enabled = true);

  EmbeddingVector get(const std::string& genre);
  std::vector<EmbeddingVector> get_all(std::span<const std::string> genres);

  std::uint64_t hits() const;
  std::uint64_t misses() const;
  bool enabled() const noexcept { return enabled_; }

 private:
  Provider& provider_;
  bool enabled_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<EmbeddingVector>> entries_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

// Embeds visual and dialogue summaries of every scene in a single provider call.
std::vector<kernels::SceneFeatures> embed_scene_texts(std::span<const SceneText> texts,
                                                      Provider& text_embedder);

// Scores pre-embedded scenes against the query genres fetched from the cache.
std::vector<SaliencyScore> score_all(std::span<const SceneText> texts,
                                     std::span<const kernels::SceneFeatures> features,
                                     std::span<const std::string> query, GenreFeatureCache& cache);

std::vector<SaliencyScore> score_all(std::span<const SceneText> texts,
                                     std::span<const std::string> query, GenreFeatureCache& cache,
                                     Provider& text_embedder);

}  // namespace vsum
