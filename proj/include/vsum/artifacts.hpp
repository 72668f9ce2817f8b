#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsum/genre_labeler.hpp"
#include "vsum/selector.hpp"
#include "vsum/semantic_analyzer.hpp"
#include "vsum/timeline.hpp"

// JSON artifacts exchanged between pipeline stages. Objects use sorted keys
// and two-space indentation so identical inputs produce identical bytes.
namespace vsum::artifacts {

using nlohmann::json;

// Pretty-printed JSON plus a trailing newline.
std::string dump(const json& j);
void write_json(const std::filesystem::path& path, const json& j);
// Throws ParseError naming the path.
json read_json(const std::filesystem::path& path);

struct SceneList {
  std::string video;
  double duration = 0;
  std::vector<Scene> scenes;
};

// {"video", "duration", "scenes": [{"id", "start", "end"}]}
json scenes_to_json(const SceneList& s);
SceneList scenes_from_json(const json& j);

// {"video", "cues": [{"start", "end", "text"}]}
json captions_to_json(const std::string& video, const std::vector<CaptionCue>& cues);
std::vector<CaptionCue> captions_from_json(const json& j);

// Shot boundaries: {"duration", "boundaries": [...]} or a bare array.
BoundarySet shots_from_json(const json& j, double duration);

json labels_to_json(const VideoLabels& labels, const GenreVocabulary& vocab);

struct LabelEntry {
  std::vector<std::string> query;
  std::vector<int> scenes;
};
struct LabelFile {
  std::string video;
  double duration = 0;
  std::vector<LabelEntry> gt_summaries;
};
LabelFile labels_from_json(const json& j);

// {"video", "query", "scores": [{"scene", "score"}]}
json scores_to_json(const std::string& video, const std::vector<std::string>& query,
                    const std::vector<SaliencyScore>& scores);

struct SummaryFile {
  std::string video;
  std::vector<std::string> query;
  double budget_ratio = 0;
  std::string strategy;
  std::vector<int> scenes;
  std::vector<TimeSpan> spans;
};

// {"video", "query", "budget_ratio", "strategy", "scenes", "spans": [[start, end]]}
json summary_to_json(const SummaryFile& s);
SummaryFile summary_from_json(const json& j);

}  // namespace vsum::artifacts
