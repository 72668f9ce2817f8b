#include "vsum/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <set>

#include <omp.h>

#include "vsum/error.hpp"
#include "vsum/subtitles.hpp"
#include "vsum/synthetic.hpp"

namespace vsum {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  if (!(fps > 0.0)) throw UsageError("fps must be positive");
  if (!(budget_ratio > 0.0 && budget_ratio < 1.0)) throw UsageError("budget ratio must be in (0, 1)");
}

void RunOverrides::apply(RunConfig& c) const {
  if (fps) c.fps = *fps;
  if (budget_ratio) c.budget_ratio = *budget_ratio;
  if (strategy) c.strategy = strategy;
  if (mode) c.mode = *mode;
  if (seed) c.seed = *seed;
  if (out_dir) c.out_dir = *out_dir;
  if (workers) c.workers = *workers;
}

RunOverrides RunOverrides::from_json(const json& j) {
  RunOverrides o;
  try {
    if (j.contains("fps")) o.fps = j.at("fps").get<double>();
    if (j.contains("budget_ratio")) o.budget_ratio = j.at("budget_ratio").get<double>();
    if (j.contains("strategy")) o.strategy = parse_strategy(j.at("strategy").get<std::string>());
    if (j.contains("mode")) o.mode = parse_summary_mode(j.at("mode").get<std::string>());
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) o.out_dir = fs::path(j.at("out").get<std::string>());
    if (j.contains("workers")) o.workers = j.at("workers").get<unsigned>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run settings: ") + e.what());
  }
  return o;
}

const VideoEntry& ProjectManifest::video(const std::string& id) const {
  for (const auto& v : videos) {
    if (v.id == id) return v;
  }
  throw UsageError("video '" + id + "' is not in the manifest");
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void require_file(const fs::path& p, const std::string& what) {
  if (!fs::is_regular_file(p)) throw InvalidInput(what + " not found: " + p.string());
}

}  // namespace

ProjectManifest parse_manifest(const json& j, const fs::path& base_dir) {
  ProjectManifest m;
  m.base_dir = base_dir;
  try {
    std::set<std::string> ids;
    for (const auto& v : j.at("videos")) {
      VideoEntry e;
      e.id = v.at("id").get<std::string>();
      if (e.id.empty()) throw InvalidInput("manifest video with an empty id");
      if (!ids.insert(e.id).second) throw InvalidInput("duplicate video id '" + e.id + "'");
      e.duration = v.at("duration").get<double>();
      if (!(e.duration > 0.0)) throw InvalidInput("video '" + e.id + "' needs a positive duration");
      e.shots = resolve(base_dir, v.at("shots").get<std::string>());
      require_file(e.shots, "shots for '" + e.id + "'");
      if (v.contains("captions")) {
        e.captions = resolve(base_dir, v.at("captions").get<std::string>());
        require_file(*e.captions, "captions for '" + e.id + "'");
      }
      if (v.contains("features")) {
        const auto& f = v.at("features");
        for (const auto& p : f.is_array() ? f : json::array({f})) {
          e.features.push_back(resolve(base_dir, p.get<std::string>()));
          require_file(e.features.back(), "features for '" + e.id + "'");
        }
      }
      if (v.contains("movie_genres")) e.movie_genres = v.at("movie_genres").get<std::vector<std::string>>();
      m.videos.push_back(std::move(e));
    }
    if (j.contains("providers")) {
      for (const auto& [role_name, cfg] : j.at("providers").items()) {
        const Role role = parse_role(role_name);
        m.providers[role] = ProviderConfig::from_json(role, cfg, base_dir);
        if (!m.providers[role].path.empty()) require_file(m.providers[role].path, role_name + " provider file");
      }
    }
    if (j.contains("vocabulary")) m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    if (j.contains("run")) m.run = RunOverrides::from_json(j.at("run"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
  if (m.vocabulary) (void)GenreVocabulary(*m.vocabulary);
  return m;
}

ProjectManifest load_manifest(const fs::path& path) {
  const auto j = artifacts::read_json(path);
  try {
    return parse_manifest(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError::prefixed(path.string() + ": ", e);
  }
}

RunConfig resolve_run_config(const ProjectManifest& manifest, const RunOverrides& cli) {
  RunConfig c;
  manifest.run.apply(c);
  cli.apply(c);
  c.validate();
  return c;
}

namespace paths {

namespace {
std::string query_key(const std::vector<std::string>& query) {
  std::string key;
  for (const auto& g : query) {
    if (!key.empty()) key += '+';
    key += g;
  }
  return key;
}
}  // namespace

fs::path scenes(const fs::path& dir, const std::string& video) { return dir / (video + ".scenes.json"); }
fs::path captions(const fs::path& dir, const std::string& video) { return dir / (video + ".captions.json"); }
fs::path labels(const fs::path& dir, const std::string& video) { return dir / (video + ".labels.json"); }
fs::path scores(const fs::path& dir, const std::string& video, const std::vector<std::string>& query) {
  return dir / (video + ".scores." + query_key(query) + ".json");
}
fs::path summary(const fs::path& dir, const std::string& video, const std::vector<std::string>& query) {
  return dir / (video + ".summary." + query_key(query) + ".json");
}

}  // namespace paths

ProviderSet build_providers(const ProjectManifest& manifest) {
  ProviderSet set;
  for (std::size_t r = 0; r < kRoleCount; ++r) {
    const Role role = static_cast<Role>(r);
    ProviderConfig cfg;
    cfg.role = role;
    if (auto it = manifest.providers.find(role); it != manifest.providers.end()) cfg = it->second;

    if (role == Role::kFrameEmbed && cfg.backend == Backend::kFile) {
      // Provider-level table plus every per-video feature file.
      FileSources sources;
      std::optional<FeatureTable> table;
      if (!cfg.path.empty()) table = load_feature_table(cfg.path);
      for (const auto& v : manifest.videos) {
        for (const auto& p : v.features) {
          auto t = load_feature_table(p);
          if (!table) {
            table = std::move(t);
          } else {
            table->merge(t);
          }
        }
      }
      sources.features = std::move(table);
      set.set(role, std::make_shared<FileProvider>(std::move(sources)));
      continue;
    }
    set.set(role, make_provider(cfg));
  }
  return set;
}

Pipeline::Pipeline(ProjectManifest manifest, RunConfig config)
    : Pipeline(manifest, config, build_providers(manifest)) {}

Pipeline::Pipeline(ProjectManifest manifest, RunConfig config, ProviderSet providers)
    : manifest_(std::move(manifest)),
      config_(std::move(config)),
      vocab_(manifest_.vocabulary ? GenreVocabulary(*manifest_.vocabulary) : GenreVocabulary()),
      providers_(std::move(providers)) {
  config_.validate();
}

std::vector<CaptionCue> Pipeline::captions(const std::string& video) const {
  const auto& entry = manifest_.video(video);
  if (!entry.captions) return providers_.transcriber().transcribe(video);
  const auto ext = entry.captions->extension().string();
  if (ext == ".json") return artifacts::captions_from_json(artifacts::read_json(*entry.captions));
  return load_subtitles(*entry.captions);
}

std::vector<Scene> Pipeline::segment(const std::string& video) const {
  const auto& entry = manifest_.video(video);
  BoundarySet shots = [&] {
    try {
      return artifacts::shots_from_json(artifacts::read_json(entry.shots), entry.duration);
    } catch (const ParseError& e) {
      throw ParseError::prefixed(entry.shots.string() + ": ", e);
    }
  }();
  const auto cues = captions(video);
  return build_scenes(merge_boundaries(shots, audio_boundaries(cues, entry.duration)));
}

std::vector<Scene> Pipeline::scenes_for(const std::string& video) const { return segment(video); }

std::vector<std::string> Pipeline::canonical_query(const std::vector<std::string>& query) const {
  if (query.empty() || query.size() > 3) {
    throw UsageError("a query needs 1 to 3 genres, got " + std::to_string(query.size()));
  }
  std::set<std::size_t> idx;
  for (const auto& g : query) {
    if (!vocab_.contains(g)) throw UsageError("unknown genre '" + g + "'");
    if (!idx.insert(vocab_.index_of(g)).second) throw UsageError("duplicate genre '" + g + "'");
  }
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(vocab_[i]);
  return out;
}

fs::path Pipeline::cmd_segment(const std::string& video) const {
  const auto& entry = manifest_.video(video);
  const auto scenes = segment(video);
  artifacts::write_json(paths::captions(config_.out_dir, video),
                        artifacts::captions_to_json(video, captions(video)));
  const auto out = paths::scenes(config_.out_dir, video);
  artifacts::write_json(out, artifacts::scenes_to_json({video, entry.duration, scenes}));
  return out;
}

fs::path Pipeline::cmd_label(const std::string& video, const std::vector<std::string>& movie_genres) const {
  const auto& entry = manifest_.video(video);
  const auto& names = movie_genres.empty() ? entry.movie_genres : movie_genres;
  if (names.empty()) throw UsageError("no movie genres for '" + video + "'");
  const auto idx = vocab_.indices_of(names);
  const std::set<std::size_t> genres(idx.begin(), idx.end());
  const auto scenes = scenes_for(video);
  LabelOptions options;
  options.fps = config_.fps;
  options.budget_ratio = config_.budget_ratio;
  const auto labels = label_video(video, scenes, genres, vocab_, providers_.frame_embedder(),
                                  providers_.text_embedder(), options);
  const auto out = paths::labels(config_.out_dir, video);
  artifacts::write_json(out, artifacts::labels_to_json(labels, vocab_));
  return out;
}

namespace {

artifacts::SummaryFile summary_file(const std::string& video, const std::vector<std::string>& query,
                                    double ratio, std::string strategy, std::span<const Scene> scenes,
                                    const std::vector<int>& picked) {
  artifacts::SummaryFile s{video, query, ratio, std::move(strategy), picked, {}};
  for (int id : picked) s.spans.push_back(scenes[static_cast<std::size_t>(id)].span);
  return s;
}

}  // namespace

fs::path Pipeline::cmd_summarize(const std::string& video, const std::vector<std::string>& query) const {
  const auto q = canonical_query(query);
  const auto& entry = manifest_.video(video);
  const auto scenes = scenes_for(video);
  const auto cues = captions(video);

  std::vector<SceneText> texts;
  try {
    texts = build_scene_texts(video, scenes, cues, providers_.captioner(), providers_.summarizer(),
                              {config_.fps, config_.mode});
  } catch (const ProviderError& e) {
    throw ProviderError(std::string("semantic analysis: ") + e.what());
  }
  GenreFeatureCache cache(providers_.text_embedder());
  const auto scores = score_all(texts, q, cache, providers_.text_embedder());
  artifacts::write_json(paths::scores(config_.out_dir, video, q), artifacts::scores_to_json(video, q, scores));

  const Strategy strategy = config_.strategy.value_or(choose_strategy(entry.duration));
  const auto sel = select_scenes(scenes, scores, config_.budget_ratio, strategy);
  const auto out = paths::summary(config_.out_dir, video, q);
  artifacts::write_json(out, artifacts::summary_to_json(summary_file(
                                 video, q, config_.budget_ratio, std::string(to_string(strategy)),
                                 scenes, sel.scenes)));
  return out;
}

fs::path Pipeline::cmd_random_baseline(const std::string& video, const std::vector<std::string>& query) const {
  const auto q = canonical_query(query);
  const auto scenes = scenes_for(video);
  std::vector<std::size_t> order(scenes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Fisher-Yates on splitmix64 so the permutation is the same on every platform.
  SplitMix64 rng(config_.seed ^ fnv1a64(video));
  for (std::size_t i = order.size(); i-- > 1;) std::swap(order[i], order[rng.next_below(i + 1)]);

  double total = 0.0;
  for (const auto& s : scenes) total += s.span.duration();
  const long long capacity = decisecond_capacity(config_.budget_ratio, total);
  long long used = 0;
  std::vector<int> picked;
  for (auto i : order) {
    const long long w = decisecond_weight(scenes[i].span.duration());
    if (used + w > capacity) continue;
    used += w;
    picked.push_back(scenes[i].id);
  }
  std::sort(picked.begin(), picked.end());
  const auto out = paths::summary(config_.out_dir, video, q);
  artifacts::write_json(out, artifacts::summary_to_json(
                                 summary_file(video, q, config_.budget_ratio, "random", scenes, picked)));
  return out;
}

void Pipeline::for_each_video(const std::function<void(const std::string&)>& fn) const {
  const auto n = static_cast<std::ptrdiff_t>(manifest_.videos.size());
  std::vector<std::exception_ptr> errors(manifest_.videos.size());
  const int workers = config_.workers ? static_cast<int>(config_.workers) : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(manifest_.videos[static_cast<std::size_t>(i)].id);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::vector<std::string>> preference_sets(const GenreVocabulary& vocab, std::size_t n) {
  std::set<std::size_t> all;
  for (std::size_t i = 0; i < vocab.size(); ++i) all.insert(i);
  std::vector<std::vector<std::string>> out;
  for (const auto& q : enumerate_queries(all, 3)) {
    if (out.size() == n) break;
    std::vector<std::string> names;
    for (auto i : q) names.push_back(vocab[i]);
    out.push_back(std::move(names));
  }
  return out;
}

json Pipeline::cmd_bench(std::size_t n_videos, std::size_t n_preference_sets) const {
  for (Role r : {Role::kTextEmbed, Role::kCaption, Role::kSummarize}) {
    auto it = manifest_.providers.find(r);
    if (it != manifest_.providers.end() && it->second.backend != Backend::kSynthetic) {
      throw UsageError("bench needs the synthetic backend for " + std::string(to_string(r)));
    }
  }
  if (n_videos == 0 || n_preference_sets == 0) throw UsageError("bench needs videos and preference sets");
  const auto prefs = preference_sets(vocab_, n_preference_sets);
  if (prefs.size() < n_preference_sets) throw UsageError("not enough distinct preference sets");

  ProviderConfig text_cfg;
  if (auto it = manifest_.providers.find(Role::kTextEmbed); it != manifest_.providers.end()) text_cfg = it->second;
  SyntheticProvider helper(text_cfg.dim, text_cfg.seed);

  // Fixed synthetic videos: 12 scenes of 5 s, captioned at 1 frame per second.
  std::vector<std::vector<SceneText>> videos;
  for (std::size_t v = 0; v < n_videos; ++v) {
    std::vector<Scene> scenes;
    for (int s = 0; s < 12; ++s) scenes.push_back({s, TimeSpan(5.0 * s, 5.0 * (s + 1))});
    videos.push_back(build_scene_texts("bench-" + std::to_string(v), scenes, {}, helper, helper,
                                       {1.0, SummaryMode::kSummarize}));
  }

  struct Pass {
    std::uint64_t genre_calls = 0;
    std::uint64_t scene_calls = 0;
    double seconds = 0;
    std::vector<double> scores;
  };
  auto run = [&](bool cached) {
    SyntheticProvider scene_embedder(text_cfg.dim, text_cfg.seed);
    SyntheticProvider genre_embedder(text_cfg.dim, text_cfg.seed);
    GenreFeatureCache cache(genre_embedder, cached);
    Pass pass;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<kernels::SceneFeatures>> features;
    for (const auto& texts : videos) features.push_back(embed_scene_texts(texts, scene_embedder));
    for (const auto& q : prefs) {
      for (std::size_t v = 0; v < videos.size(); ++v) {
        for (const auto& s : score_all(videos[v], features[v], q, cache)) pass.scores.push_back(s.score);
      }
    }
    pass.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    pass.genre_calls = genre_embedder.calls(Role::kTextEmbed);
    pass.scene_calls = scene_embedder.calls(Role::kTextEmbed);
    return pass;
  };
  const Pass with_cache = run(true);
  const Pass without_cache = run(false);
  if (with_cache.genre_calls > vocab_.size()) {
    throw Error("genre cache made " + std::to_string(with_cache.genre_calls) +
                " provider calls for a vocabulary of " + std::to_string(vocab_.size()));
  }
  auto pass_json = [](const Pass& p) {
    return json{{"genre_embed_calls", p.genre_calls},
                {"scene_embed_calls", p.scene_calls},
                {"seconds", p.seconds}};
  };
  return {{"videos", n_videos},
          {"preference_sets", n_preference_sets},
          {"vocabulary_size", vocab_.size()},
          {"cached", pass_json(with_cache)},
          {"uncached", pass_json(without_cache)},
          {"scores_identical", with_cache.scores == without_cache.scores}};
}

EvalOutputs cmd_eval(const fs::path& predictions_dir, const fs::path& labels_dir, const fs::path& out_dir,
                     const std::string& model_name) {
  if (!fs::is_directory(predictions_dir)) throw InvalidInput("not a directory: " + predictions_dir.string());
  if (!fs::is_directory(labels_dir)) throw InvalidInput("not a directory: " + labels_dir.string());

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(predictions_dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.find(".summary.") != std::string::npos && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidInput("no summary files in " + predictions_dir.string());

  struct GroundTruth {
    artifacts::LabelFile labels;
    artifacts::SceneList scenes;
  };
  std::map<std::string, GroundTruth> truth;
  auto lookup = [&](const std::string& video) -> const GroundTruth* {
    if (auto it = truth.find(video); it != truth.end()) return &it->second;
    const auto lp = paths::labels(labels_dir, video);
    const auto sp = paths::scenes(labels_dir, video);
    if (!fs::exists(lp) || !fs::exists(sp)) return nullptr;
    return &truth.emplace(video, GroundTruth{artifacts::labels_from_json(artifacts::read_json(lp)),
                                             artifacts::scenes_from_json(artifacts::read_json(sp))})
                .first->second;
  };

  std::vector<EvalPair> pairs;
  std::vector<std::string> unmatched;
  for (const auto& f : files) {
    const auto pred = artifacts::summary_from_json(artifacts::read_json(f));
    const GroundTruth* gt = lookup(pred.video);
    const artifacts::LabelEntry* entry = nullptr;
    if (gt) {
      for (const auto& e : gt->labels.gt_summaries) {
        if (e.query == pred.query) entry = &e;
      }
    }
    if (!entry) {
      std::string key = pred.video + " [";
      for (std::size_t i = 0; i < pred.query.size(); ++i) key += (i ? "," : "") + pred.query[i];
      unmatched.push_back(key + "] (" + f.filename().string() + ")");
      continue;
    }
    EvalPair p{pred.video, pred.query, pred.spans, {}};
    for (int id : entry->scenes) {
      if (id < 0 || static_cast<std::size_t>(id) >= gt->scenes.scenes.size()) {
        throw InvalidInput("labels for '" + pred.video + "' reference unknown scene " + std::to_string(id));
      }
      p.ground_truth.push_back(gt->scenes.scenes[static_cast<std::size_t>(id)].span);
    }
    pairs.push_back(std::move(p));
  }
  if (!unmatched.empty()) {
    std::string msg = "predictions without matching labels:";
    for (const auto& u : unmatched) msg += "\n  " + u;
    throw InvalidInput(msg);
  }

  EvalOutputs out;
  out.report = evaluate_dataset(pairs);
  json pair_rows = json::array();
  for (const auto& r : out.report.pairs) {
    pair_rows.push_back({{"video", r.video},
                         {"query", r.query},
                         {"precision", r.score.precision},
                         {"recall", r.score.recall},
                         {"f", r.score.f},
                         {"degenerate", r.score.degenerate}});
  }
  json per_size = json::object();
  for (const auto& [n, f] : out.report.per_query_size) per_size[std::to_string(n)] = f;
  const json report{{"overall", out.report.overall},
                    {"pairs", std::move(pair_rows)},
                    {"per_genre", out.report.per_genre},
                    {"per_query_size", std::move(per_size)}};
  out.report_json = out_dir / "report.json";
  out.genre_csv = out_dir / "report.csv";
  out.size_csv = out_dir / "report_by_size.csv";
  artifacts::write_json(out.report_json, report);
  auto write_text = [](const fs::path& p, const std::string& text) {
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    if (!o) throw InvalidInput("cannot write " + p.string());
    o << text;
  };
  write_text(out.genre_csv, genre_table_csv(out.report, model_name));
  write_text(out.size_csv, query_size_table_csv(out.report, model_name));
  return out;
}

}  // namespace vsum
