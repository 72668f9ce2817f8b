#include "vsum/semantic_analyzer.hpp"

#include <algorithm>
#include <unordered_map>

#include "vsum/error.hpp"

namespace vsum {

std::vector<double> sampling_schedule(const Scene& scene, double fps) {
  if (!(fps > 0.0)) throw InvalidInput("sampling rate must be positive");
  std::vector<double> out{scene.span.start()};
  for (std::size_t k = 1;; ++k) {
    const double t = scene.span.start() + static_cast<double>(k) / fps;
    if (!(t < scene.span.end())) break;
    out.push_back(t);
  }
  return out;
}

SummaryMode parse_summary_mode(std::string_view name) {
  if (name == "summarize") return SummaryMode::kSummarize;
  if (name == "most-frequent") return SummaryMode::kMostFrequent;
  throw InvalidInput("unknown summary mode '" + std::string(name) + "'");
}

std::string_view to_string(SummaryMode mode) noexcept {
  return mode == SummaryMode::kSummarize ? "summarize" : "most-frequent";
}

std::string most_frequent(std::span<const std::string> captions) {
  if (captions.empty()) throw InvalidInput("no captions");
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& c : captions) ++counts[c];
  // First occurrence wins ties, so scan in order with a strict comparison.
  std::size_t best = 0;
  for (std::size_t i = 1; i < captions.size(); ++i) {
    if (counts[captions[i]] > counts[captions[best]]) best = i;
  }
  return captions[best];
}

std::string scene_visual_summary(std::span<const std::string> captions, SummaryMode mode,
                                 Provider& summarizer) {
  if (captions.empty()) throw InvalidInput("scene has no captions");
  if (mode == SummaryMode::kMostFrequent) return most_frequent(captions);
  return summarizer.summarize_texts(captions);
}

std::optional<std::string> scene_dialogue_text(std::span<const CaptionCue> cues, const Scene& scene,
                                               Provider& summarizer) {
  std::vector<std::string> texts;
  for (const auto& cue : cues) {
    if (cue.span.overlaps(scene.span)) texts.push_back(cue.text);
  }
  if (texts.empty()) return std::nullopt;
  return summarizer.summarize_texts(texts);
}

std::vector<SceneText> build_scene_texts(const std::string& video, std::span<const Scene> scenes,
                                         std::span<const CaptionCue> cues, Provider& captioner,
                                         Provider& summarizer, const SceneTextOptions& options) {
  if (scenes.empty()) throw InvalidInput("video '" + video + "' has no scenes");
  FrameRequest request{video, scenes.back().span.end(), {}};
  std::vector<std::size_t> offsets{0};
  for (const auto& s : scenes) {
    const auto ts = sampling_schedule(s, options.fps);
    request.timestamps.insert(request.timestamps.end(), ts.begin(), ts.end());
    offsets.push_back(request.timestamps.size());
  }
  const auto captions = captioner.caption_frames(request);

  std::vector<SceneText> out;
  out.reserve(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const std::span<const std::string> mine(captions.data() + offsets[i], offsets[i + 1] - offsets[i]);
    try {
      out.push_back({scenes[i].id, scene_visual_summary(mine, options.mode, summarizer),
                     scene_dialogue_text(cues, scenes[i], summarizer)});
    } catch (const ProviderError& e) {
      throw ProviderError("scene " + std::to_string(scenes[i].id) + ": " + e.what());
    }
  }
  return out;
}

double score_scene(const EmbeddingVector& visual, const std::optional<EmbeddingVector>& dialogue,
                   std::span<const EmbeddingVector> genre_vecs) {
  const kernels::SceneFeatures f{visual, dialogue};
  return kernels::serial::scene_scores({&f, 1}, genre_vecs).front();
}

GenreFeatureCache::GenreFeatureCache(Provider& text_embedder, bool enabled)
    : provider_(text_embedder), enabled_(enabled) {}

EmbeddingVector GenreFeatureCache::get(const std::string& genre) {
  if (!enabled_) {
    {
      std::lock_guard lock(mu_);
      ++misses_;
    }
    return provider_.embed_texts({&genre, 1}).front();
  }
  std::promise<EmbeddingVector> promise;
  std::shared_future<EmbeddingVector> future;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(genre);
    if (it != entries_.end()) {
      ++hits_;
      future = it->second;
    } else {
      ++misses_;
      owner = true;
      future = promise.get_future().share();
      entries_.emplace(genre, future);
    }
  }
  if (owner) {
    try {
      promise.set_value(provider_.embed_texts({&genre, 1}).front());
    } catch (...) {
      // Failed lookups are not cached; later callers retry.
      {
        std::lock_guard lock(mu_);
        entries_.erase(genre);
      }
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::vector<EmbeddingVector> GenreFeatureCache::get_all(std::span<const std::string> genres) {
  std::vector<EmbeddingVector> out;
  out.reserve(genres.size());
  for (const auto& g : genres) out.push_back(get(g));
  return out;
}

std::uint64_t GenreFeatureCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::uint64_t GenreFeatureCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::vector<kernels::SceneFeatures> embed_scene_texts(std::span<const SceneText> texts,
                                                      Provider& text_embedder) {
  std::vector<std::string> batch;
  for (const auto& t : texts) {
    batch.push_back(t.visual_summary);
    if (t.dialogue_summary) batch.push_back(*t.dialogue_summary);
  }
  if (batch.empty()) return {};
  const auto vecs = text_embedder.embed_texts(batch);
  std::vector<kernels::SceneFeatures> out;
  out.reserve(texts.size());
  std::size_t k = 0;
  for (const auto& t : texts) {
    kernels::SceneFeatures f{vecs[k++], std::nullopt};
    if (t.dialogue_summary) f.dialogue = vecs[k++];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<SaliencyScore> score_all(std::span<const SceneText> texts,
                                     std::span<const kernels::SceneFeatures> features,
                                     std::span<const std::string> query, GenreFeatureCache& cache) {
  if (query.empty()) throw InvalidInput("empty genre query");
  if (texts.size() != features.size()) throw InvalidInput("one feature pair per scene required");
  const auto genres = cache.get_all(query);
  std::vector<double> scores;
  try {
    scores = kernels::parallel::scene_scores(features, genres);
  } catch (const SingularInput&) {
    // Rescan serially to name the offending scene.
    for (std::size_t i = 0; i < features.size(); ++i) {
      try {
        score_scene(features[i].visual, features[i].dialogue, genres);
      } catch (const SingularInput& e) {
        throw SingularInput("scene " + std::to_string(texts[i].scene) + ": " + e.what());
      }
    }
    throw;
  }
  std::vector<SaliencyScore> out(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) out[i] = {texts[i].scene, scores[i]};
  return out;
}

std::vector<SaliencyScore> score_all(std::span<const SceneText> texts,
                                     std::span<const std::string> query, GenreFeatureCache& cache,
                                     Provider& text_embedder) {
  const auto features = embed_scene_texts(texts, text_embedder);
  return score_all(texts, features, query, cache);
}

}  // namespace vsum
