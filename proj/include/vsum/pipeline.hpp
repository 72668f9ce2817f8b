#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsum/artifacts.hpp"
#include "vsum/evaluator.hpp"
#include "vsum/genre_labeler.hpp"
#include "vsum/providers.hpp"
#include "vsum/selector.hpp"
#include "vsum/semantic_analyzer.hpp"

namespace vsum {

struct VideoEntry {
  std::string id;
  double duration = 0;
  std::filesystem::path shots;
  std::optional<std::filesystem::path> captions;  // .srt, .vtt or captions .json
  std::vector<std::filesystem::path> features;    // frame feature tables
  std::vector<std::string> movie_genres;
};

struct RunConfig {
  double fps = kDefaultFps;
  double budget_ratio = kDefaultBudgetRatio;
  std::optional<Strategy> strategy;
  SummaryMode mode = SummaryMode::kSummarize;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  unsigned workers = 0;  // 0 = available parallelism

  void validate() const;
};

// Optional settings layered over a RunConfig; set fields win.
struct RunOverrides {
  std::optional<double> fps;
  std::optional<double> budget_ratio;
  std::optional<Strategy> strategy;
  std::optional<SummaryMode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  std::optional<unsigned> workers;

  void apply(RunConfig& config) const;
  static RunOverrides from_json(const nlohmann::json& j);
};

struct ProjectManifest {
  std::filesystem::path base_dir;
  std::vector<VideoEntry> videos;
  std::map<Role, ProviderConfig> providers;  // unset roles use the synthetic backend
  std::optional<std::vector<std::string>> vocabulary;
  RunOverrides run;

  const VideoEntry& video(const std::string& id) const;  // throws UsageError
};

// Relative paths resolve against the manifest's directory. Referenced files
// must exist; video ids must be unique.
ProjectManifest load_manifest(const std::filesystem::path& path);
ProjectManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir);

// Built-in defaults, then the manifest's "run" block, then command-line flags.
RunConfig resolve_run_config(const ProjectManifest& manifest, const RunOverrides& cli);

// Output file names under the run's output directory.
namespace paths {
std::filesystem::path scenes(const std::filesystem::path& dir, const std::string& video);
std::filesystem::path captions(const std::filesystem::path& dir, const std::string& video);
std::filesystem::path labels(const std::filesystem::path& dir, const std::string& video);
std::filesystem::path scores(const std::filesystem::path& dir, const std::string& video,
                             const std::vector<std::string>& query);
std::filesystem::path summary(const std::filesystem::path& dir, const std::string& video,
                              const std::vector<std::string>& query);
}  // namespace paths

struct EvalOutputs {
  std::filesystem::path report_json;
  std::filesystem::path genre_csv;
  std::filesystem::path size_csv;
  EvalReport report;
};

// Drives the stages for videos in a manifest. Every command is deterministic
// under synthetic and file backends and writes only into the output directory.
class Pipeline {
 public:
  Pipeline(ProjectManifest manifest, RunConfig config);
  // Explicit providers, e.g. for tests that count calls.
  Pipeline(ProjectManifest manifest, RunConfig config, ProviderSet providers);

  const ProjectManifest& manifest() const noexcept { return manifest_; }
  const RunConfig& config() const noexcept { return config_; }
  const GenreVocabulary& vocabulary() const noexcept { return vocab_; }
  const ProviderSet& providers() const noexcept { return providers_; }

  std::vector<CaptionCue> captions(const std::string& video) const;
  std::vector<Scene> segment(const std::string& video) const;
  // Query validated against the vocabulary, 1..3 distinct genres, returned in
  // vocabulary order. Throws UsageError.
  std::vector<std::string> canonical_query(const std::vector<std::string>& query) const;

  std::filesystem::path cmd_segment(const std::string& video) const;
  std::filesystem::path cmd_label(const std::string& video,
                                  const std::vector<std::string>& movie_genres = {}) const;
  std::filesystem::path cmd_summarize(const std::string& video,
                                      const std::vector<std::string>& query) const;
  std::filesystem::path cmd_random_baseline(const std::string& video,
                                            const std::vector<std::string>& query) const;
  // Benchmark of scoring many preference sets over synthetic videos, with and
  // without the genre cache.
  nlohmann::json cmd_bench(std::size_t n_videos, std::size_t n_preference_sets) const;

  // Runs fn for every manifest video on a bounded worker pool. The first
  // failure (in manifest order) is rethrown after all workers finish.
  void for_each_video(const std::function<void(const std::string&)>& fn) const;

 private:
  std::vector<Scene> scenes_for(const std::string& video) const;

  ProjectManifest manifest_;
  RunConfig config_;
  GenreVocabulary vocab_;
  ProviderSet providers_;
};

// Scores every prediction file in predictions_dir against labels.json and
// scenes.json in labels_dir. All unmatched predictions are reported at once.
EvalOutputs cmd_eval(const std::filesystem::path& predictions_dir,
                     const std::filesystem::path& labels_dir, const std::filesystem::path& out_dir,
                     const std::string& model_name = "engine");

ProviderSet build_providers(const ProjectManifest& manifest);

// First n genre combinations of size 1..3 in enumeration order.
std::vector<std::vector<std::string>> preference_sets(const GenreVocabulary& vocab, std::size_t n);

}  // namespace vsum
