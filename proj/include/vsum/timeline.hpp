#pragma once

#include <span>
#include <string>
#include <vector>

namespace vsum {

// Boundaries closer than this are treated as the same cut.
inline constexpr double kBoundaryEpsilon = 0.01;

// Half-open interval [start, end) in seconds.
class TimeSpan {
 public:
  TimeSpan(double start, double end);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  double duration() const noexcept { return end_ - start_; }
  bool overlaps(const TimeSpan& other) const noexcept {
    return start_ < other.end_ && other.start_ < end_;
  }

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;

 private:
  double start_;
  double end_;
};

struct Scene {
  int id = 0;
  TimeSpan span;

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct CaptionCue {
  TimeSpan span;
  std::string text;

  friend bool operator==(const CaptionCue&, const CaptionCue&) = default;
};

// Strictly increasing cut points starting at 0 and ending at the video duration.
class BoundarySet {
 public:
  // Validates; throws InvalidInput unless strictly increasing from 0.
  explicit BoundarySet(std::vector<double> timestamps);

  // Snaps raw cut points into [0, duration], adds both ends and applies the
  // merge tolerance rules. Never throws for finite input with duration > 0.
  static BoundarySet canonical(std::vector<double> raw, double duration);

  // {0, duration}
  static BoundarySet trivial(double duration);

  const std::vector<double>& timestamps() const noexcept { return timestamps_; }
  double duration() const noexcept { return timestamps_.back(); }
  std::size_t size() const noexcept { return timestamps_.size(); }

  friend bool operator==(const BoundarySet&, const BoundarySet&) = default;

 private:
  std::vector<double> timestamps_;
};

// Sorted union of both sets. A timestamp closer than 2*epsilon to the last
// kept one is dropped (the earlier one wins); an interior cut closer than
// 2*epsilon to the end is dropped so the final scene absorbs it. Durations more
// than epsilon apart are rejected.
BoundarySet merge_boundaries(const BoundarySet& video, const BoundarySet& audio);

std::vector<Scene> build_scenes(const BoundarySet& bounds);

// Cue starts and ends as boundaries over [0, duration].
BoundarySet audio_boundaries(std::span<const CaptionCue> cues, double duration);

// Sorts by start, clips each start to the previous end, trims text and drops
// cues that end up empty.
std::vector<CaptionCue> normalize_cues(std::vector<CaptionCue> cues);

double total_duration(std::span<const TimeSpan> spans);

// Sorted, with overlapping or touching spans merged.
std::vector<TimeSpan> normalize_spans(std::vector<TimeSpan> spans);

// Length of the pointwise intersection of two internally non-overlapping lists.
double intersect_duration(std::span<const TimeSpan> a, std::span<const TimeSpan> b);

std::string trim(std::string_view s);

}  // namespace vsum
