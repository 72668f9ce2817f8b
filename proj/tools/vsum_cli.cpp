// Command-line front end: segment | label | summarize | eval | bench | random-baseline.

#include <iostream>
#include <mutex>

#include <CLI11.hpp>

#include "vsum/error.hpp"
#include "vsum/pipeline.hpp"

namespace {

using vsum::ExitCode;

struct Options {
  std::string manifest;
  std::string video;
  std::vector<std::string> query;
  std::vector<std::string> movie_genres;
  std::optional<double> budget_ratio;
  std::optional<double> fps;
  std::optional<std::string> mode;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::string predictions;
  std::string labels;
  std::string model = "engine";
  std::size_t bench_videos = 10;
  std::size_t bench_sets = 300;
};

void add_run_flags(CLI::App* cmd, Options& o, bool manifest_required = true) {
  auto* m = cmd->add_option("--manifest", o.manifest, "Project manifest (JSON)");
  if (manifest_required) m->required();
  cmd->add_option("--budget-ratio", o.budget_ratio, "Summary length as a fraction of the video");
  cmd->add_option("--fps", o.fps, "Frame sampling rate");
  cmd->add_option("--mode", o.mode, "Visual summary mode: summarize | most-frequent");
  cmd->add_option("--strategy", o.strategy, "Selection strategy override: knapsack | greedy");
  cmd->add_option("--seed", o.seed, "Seed for randomized utilities");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = available parallelism)");
}

vsum::RunOverrides overrides(const Options& o) {
  vsum::RunOverrides r;
  r.fps = o.fps;
  r.budget_ratio = o.budget_ratio;
  if (o.mode) r.mode = vsum::parse_summary_mode(*o.mode);
  if (o.strategy) r.strategy = vsum::parse_strategy(*o.strategy);
  r.seed = o.seed;
  if (o.out) r.out_dir = *o.out;
  r.workers = o.workers;
  return r;
}

vsum::Pipeline make_pipeline(const Options& o) {
  // Without a manifest every role falls back to the synthetic backend.
  auto manifest = o.manifest.empty() ? vsum::ProjectManifest{} : vsum::load_manifest(o.manifest);
  auto config = vsum::resolve_run_config(manifest, overrides(o));
  return vsum::Pipeline(std::move(manifest), std::move(config));
}

// Runs fn for --video, or for every manifest video when it is absent.
template <typename Fn>
void per_video(const vsum::Pipeline& p, const Options& o, Fn&& fn) {
  if (!o.video.empty()) {
    std::cout << fn(o.video).string() << '\n';
    return;
  }
  std::mutex mu;
  p.for_each_video([&](const std::string& v) {
    auto path = fn(v);
    std::lock_guard lock(mu);
    std::cout << path.string() << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genre-conditioned video summarization and label generation"};
  app.require_subcommand(1);
  Options o;

  auto* segment = app.add_subcommand("segment", "Merge shot and caption boundaries into scenes");
  add_run_flags(segment, o);
  segment->add_option("--video", o.video, "Video id (default: all)");

  auto* label = app.add_subcommand("label", "Generate genre-conditioned ground-truth summaries");
  add_run_flags(label, o);
  label->add_option("--video", o.video, "Video id (default: all)");
  label->add_option("--movie-genre", o.movie_genres, "Movie-level genre (repeatable)");

  auto* summarize = app.add_subcommand("summarize", "Score scenes against a genre query and select a summary");
  add_run_flags(summarize, o);
  summarize->add_option("--video", o.video, "Video id (default: all)");
  summarize->add_option("--query", o.query, "Query genre (repeatable, at most 3)")->required();

  auto* random = app.add_subcommand("random-baseline", "Seeded random summary within the budget");
  add_run_flags(random, o);
  random->add_option("--video", o.video, "Video id (default: all)");
  random->add_option("--query", o.query, "Query genre the baseline is filed under")->required();

  auto* eval = app.add_subcommand("eval", "Keyshot precision/recall/F against generated labels");
  eval->add_option("--predictions", o.predictions, "Directory of summary files")->required();
  eval->add_option("--labels", o.labels, "Directory of labels and scenes files")->required();
  eval->add_option("--out", o.out, "Report directory");
  eval->add_option("--model", o.model, "Row label in the CSV tables");

  auto* bench = app.add_subcommand("bench", "Scoring cost versus number of preference sets");
  add_run_flags(bench, o, false);
  bench->add_option("--videos", o.bench_videos, "Synthetic videos");
  bench->add_option("--preference-sets", o.bench_sets, "Distinct genre queries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (*segment) {
      const auto p = make_pipeline(o);
      per_video(p, o, [&](const std::string& v) { return p.cmd_segment(v); });
    } else if (*label) {
      const auto p = make_pipeline(o);
      per_video(p, o, [&](const std::string& v) { return p.cmd_label(v, o.movie_genres); });
    } else if (*summarize) {
      const auto p = make_pipeline(o);
      per_video(p, o, [&](const std::string& v) { return p.cmd_summarize(v, o.query); });
    } else if (*random) {
      const auto p = make_pipeline(o);
      per_video(p, o, [&](const std::string& v) { return p.cmd_random_baseline(v, o.query); });
    } else if (*eval) {
      const auto out = vsum::cmd_eval(o.predictions, o.labels, o.out.value_or("."), o.model);
      std::cout << out.report_json.string() << '\n' << "overall F " << out.report.overall << '\n';
    } else if (*bench) {
      const auto p = make_pipeline(o);
      std::cout << p.cmd_bench(o.bench_videos, o.bench_sets).dump(2) << '\n';
    }
  } catch (const vsum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kData);
  }
  return 0;
}
