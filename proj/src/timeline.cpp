#include "vsum/timeline.hpp"

#include <algorithm>
#include <cmath>

#include "vsum/error.hpp"

namespace vsum {

TimeSpan::TimeSpan(double start, double end) : start_(start), end_(end) {
  if (!std::isfinite(start) || !std::isfinite(end) || start < 0.0 || !(start < end)) {
    throw InvalidInput("invalid time span [" + std::to_string(start) + ", " +
                       std::to_string(end) + ")");
  }
}

BoundarySet::BoundarySet(std::vector<double> timestamps) : timestamps_(std::move(timestamps)) {
  if (timestamps_.size() < 2) throw InvalidInput("boundary set needs at least two timestamps");
  if (timestamps_.front() != 0.0) throw InvalidInput("boundary set must start at 0");
  for (std::size_t i = 0; i < timestamps_.size(); ++i) {
    if (!std::isfinite(timestamps_[i])) throw InvalidInput("non-finite boundary");
    if (i > 0 && !(timestamps_[i - 1] < timestamps_[i])) {
      throw InvalidInput("boundaries must be strictly increasing");
    }
  }
}

BoundarySet BoundarySet::canonical(std::vector<double> raw, double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidInput("duration must be positive");
  const double min_gap = 2.0 * kBoundaryEpsilon;
  std::sort(raw.begin(), raw.end());
  std::vector<double> out{0.0};
  for (double t : raw) {
    if (!std::isfinite(t)) throw InvalidInput("non-finite boundary");
    t = std::clamp(t, 0.0, duration);
    if (t - out.back() < min_gap) continue;
    out.push_back(t);
  }
  // Last scene has no successor, so a short tail is folded into its predecessor.
  while (out.size() > 1 && duration - out.back() < min_gap) out.pop_back();
  out.push_back(duration);
  return BoundarySet(std::move(out));
}

BoundarySet BoundarySet::trivial(double duration) { return BoundarySet({0.0, duration}); }

BoundarySet merge_boundaries(const BoundarySet& video, const BoundarySet& audio) {
  if (std::abs(video.duration() - audio.duration()) > kBoundaryEpsilon) {
    throw InvalidInput("boundary sets cover different durations: " +
                       std::to_string(video.duration()) + " vs " +
                       std::to_string(audio.duration()));
  }
  const double duration = std::min(video.duration(), audio.duration());
  std::vector<double> all;
  all.reserve(video.size() + audio.size());
  const auto& v = video.timestamps();
  const auto& a = audio.timestamps();
  all.insert(all.end(), v.begin(), v.end() - 1);
  all.insert(all.end(), a.begin(), a.end() - 1);
  return BoundarySet::canonical(std::move(all), duration);
}

std::vector<Scene> build_scenes(const BoundarySet& bounds) {
  const auto& ts = bounds.timestamps();
  std::vector<Scene> scenes;
  scenes.reserve(ts.size() - 1);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    scenes.push_back(Scene{static_cast<int>(i), TimeSpan(ts[i], ts[i + 1])});
  }
  return scenes;
}

BoundarySet audio_boundaries(std::span<const CaptionCue> cues, double duration) {
  std::vector<double> raw;
  raw.reserve(cues.size() * 2);
  for (const auto& cue : cues) {
    raw.push_back(cue.span.start());
    raw.push_back(cue.span.end());
  }
  return BoundarySet::canonical(std::move(raw), duration);
}

std::string trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<CaptionCue> normalize_cues(std::vector<CaptionCue> cues) {
  std::stable_sort(cues.begin(), cues.end(), [](const CaptionCue& x, const CaptionCue& y) {
    return x.span.start() < y.span.start();
  });
  std::vector<CaptionCue> out;
  out.reserve(cues.size());
  for (auto& cue : cues) {
    std::string text = trim(cue.text);
    if (text.empty()) continue;
    double start = cue.span.start();
    if (!out.empty()) start = std::max(start, out.back().span.end());
    if (!(start < cue.span.end())) continue;
    out.push_back(CaptionCue{TimeSpan(start, cue.span.end()), std::move(text)});
  }
  return out;
}

double total_duration(std::span<const TimeSpan> spans) {
  double total = 0.0;
  for (const auto& s : spans) total += s.duration();
  return total;
}

std::vector<TimeSpan> normalize_spans(std::vector<TimeSpan> spans) {
  std::sort(spans.begin(), spans.end(), [](const TimeSpan& x, const TimeSpan& y) {
    return x.start() < y.start() || (x.start() == y.start() && x.end() < y.end());
  });
  std::vector<TimeSpan> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.start() <= out.back().end()) {
      if (s.end() > out.back().end()) out.back() = TimeSpan(out.back().start(), s.end());
    } else {
      out.push_back(s);
    }
  }
  return out;
}

namespace {

void check_disjoint(std::span<const TimeSpan> spans, const char* name) {
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].start() < spans[i - 1].end()) {
      throw InvalidInput(std::string("span list '") + name + "' is unsorted or overlapping");
    }
  }
}

}  // namespace

double intersect_duration(std::span<const TimeSpan> a, std::span<const TimeSpan> b) {
  check_disjoint(a, "a");
  check_disjoint(b, "b");
  // Two-pointer sweep. Each overlap is min(end) - max(start), which is the same
  // expression whichever list is called a, so the result is exactly symmetric.
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].start(), b[j].start());
    const double hi = std::min(a[i].end(), b[j].end());
    if (lo < hi) total += hi - lo;
    if (a[i].end() < b[j].end()) {
      ++i;
    } else if (b[j].end() < a[i].end()) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return total;
}

}  // namespace vsum
