#include "vsum/artifacts.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vsum/error.hpp"

namespace vsum::artifacts {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << dump(j);
  if (!out) throw InvalidInput("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("missing artifact " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json scenes_to_json(const SceneList& s) {
  json scenes = json::array();
  for (const auto& sc : s.scenes) {
    scenes.push_back({{"id", sc.id}, {"start", sc.span.start()}, {"end", sc.span.end()}});
  }
  return {{"video", s.video}, {"duration", s.duration}, {"scenes", std::move(scenes)}};
}

SceneList scenes_from_json(const json& j) {
  return guarded("scenes.json", [&] {
    SceneList s;
    s.video = j.at("video").get<std::string>();
    s.duration = j.at("duration").get<double>();
    for (const auto& sc : j.at("scenes")) {
      s.scenes.push_back({sc.at("id").get<int>(),
                          TimeSpan(sc.at("start").get<double>(), sc.at("end").get<double>())});
    }
    for (std::size_t i = 0; i < s.scenes.size(); ++i) {
      if (s.scenes[i].id != static_cast<int>(i) ||
          (i > 0 && s.scenes[i].span.start() != s.scenes[i - 1].span.end())) {
        throw InvalidInput("scenes.json for '" + s.video + "' is not a contiguous partition");
      }
    }
    return s;
  });
}

json captions_to_json(const std::string& video, const std::vector<CaptionCue>& cues) {
  json arr = json::array();
  for (const auto& c : cues) arr.push_back({{"start", c.span.start()}, {"end", c.span.end()}, {"text", c.text}});
  return {{"video", video}, {"cues", std::move(arr)}};
}

std::vector<CaptionCue> captions_from_json(const json& j) {
  return guarded("captions.json", [&] {
    std::vector<CaptionCue> cues;
    for (const auto& c : j.at("cues")) {
      cues.push_back({TimeSpan(c.at("start").get<double>(), c.at("end").get<double>()),
                      c.at("text").get<std::string>()});
    }
    return normalize_cues(std::move(cues));
  });
}

BoundarySet shots_from_json(const json& j, double duration) {
  return guarded("shots.json", [&] {
    const json& arr = j.is_array() ? j : j.at("boundaries");
    std::vector<double> raw;
    for (const auto& t : arr) {
      const double v = t.get<double>();
      if (!std::isfinite(v) || v < 0.0 || v > duration + kBoundaryEpsilon) {
        throw InvalidInput("shot boundary " + std::to_string(v) + " outside [0, " +
                           std::to_string(duration) + "]");
      }
      raw.push_back(v);
    }
    return BoundarySet::canonical(std::move(raw), duration);
  });
}

namespace {

json names(const std::vector<std::size_t>& idx, const GenreVocabulary& vocab) {
  json out = json::array();
  for (auto i : idx) out.push_back(vocab[i]);
  return out;
}

}  // namespace

json labels_to_json(const VideoLabels& labels, const GenreVocabulary& vocab) {
  json scene_scores = json::array();
  for (const auto& s : labels.scene_scores) {
    json scores = json::object();
    for (std::size_t g = 0; g < s.scores.size(); ++g) scores[vocab[g]] = s.scores[g];
    scene_scores.push_back({{"scene", s.scene}, {"scores", std::move(scores)},
                            {"retained", names(s.retained, vocab)}});
  }
  json gts = json::array();
  for (const auto& gt : labels.gt_summaries) {
    gts.push_back({{"query", names(gt.query, vocab)}, {"scenes", gt.scenes}});
  }
  return {{"video", labels.video},
          {"duration", labels.duration},
          {"movie_genres", names(labels.movie_genres, vocab)},
          {"scene_scores", std::move(scene_scores)},
          {"gt_summaries", std::move(gts)}};
}

LabelFile labels_from_json(const json& j) {
  return guarded("labels.json", [&] {
    LabelFile f;
    f.video = j.at("video").get<std::string>();
    f.duration = j.at("duration").get<double>();
    for (const auto& gt : j.at("gt_summaries")) {
      f.gt_summaries.push_back({gt.at("query").get<std::vector<std::string>>(),
                                gt.at("scenes").get<std::vector<int>>()});
    }
    return f;
  });
}

json scores_to_json(const std::string& video, const std::vector<std::string>& query,
                    const std::vector<SaliencyScore>& scores) {
  json arr = json::array();
  for (const auto& s : scores) arr.push_back({{"scene", s.scene}, {"score", s.score}});
  return {{"video", video}, {"query", query}, {"scores", std::move(arr)}};
}

json summary_to_json(const SummaryFile& s) {
  json spans = json::array();
  for (const auto& sp : s.spans) spans.push_back(json::array({sp.start(), sp.end()}));
  return {{"video", s.video},       {"query", s.query},   {"budget_ratio", s.budget_ratio},
          {"strategy", s.strategy}, {"scenes", s.scenes}, {"spans", std::move(spans)}};
}

SummaryFile summary_from_json(const json& j) {
  return guarded("summary.json", [&] {
    SummaryFile s;
    s.video = j.at("video").get<std::string>();
    s.query = j.at("query").get<std::vector<std::string>>();
    s.budget_ratio = j.at("budget_ratio").get<double>();
    s.strategy = j.at("strategy").get<std::string>();
    s.scenes = j.at("scenes").get<std::vector<int>>();
    for (const auto& sp : j.at("spans")) s.spans.emplace_back(sp.at(0).get<double>(), sp.at(1).get<double>());
    return s;
  });
}

}  // namespace vsum::artifacts
