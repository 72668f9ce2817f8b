#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vsum/error.hpp"
#include "vsum/timeline.hpp"

using namespace vsum;

namespace {

BoundarySet bs(std::vector<double> ts) { return BoundarySet(std::move(ts)); }

std::vector<TimeSpan> spans(std::initializer_list<std::pair<double, double>> list) {
  std::vector<TimeSpan> out;
  for (auto [a, b] : list) out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST_CASE("TimeSpan rejects empty or reversed intervals") {
  CHECK_THROWS_AS(TimeSpan(2.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(TimeSpan(3.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(TimeSpan(-1.0, 1.0), InvalidInput);
  CHECK(TimeSpan(1.0, 2.5).duration() == 2.5 - 1.0);
}

TEST_CASE("BoundarySet validation") {
  CHECK_THROWS_AS(bs({0.0}), InvalidInput);
  CHECK_THROWS_AS(bs({1.0, 2.0}), InvalidInput);
  CHECK_THROWS_AS(bs({0.0, 2.0, 2.0}), InvalidInput);
  CHECK(bs({0.0, 5.0}).duration() == 5.0);
}

TEST_CASE("merge_boundaries examples") {
  CHECK(merge_boundaries(bs({0, 10, 20}), bs({0, 20})) == bs({0, 10, 20}));
  CHECK(merge_boundaries(bs({0, 10, 20}), bs({0, 12, 20})) == bs({0, 10, 12, 20}));
  // 10.004 is within epsilon of 10.0; the earlier one survives.
  CHECK(merge_boundaries(bs({0, 10.0, 20}), bs({0, 10.004, 20})) == bs({0, 10.0, 20}));
}

TEST_CASE("merge_boundaries rejects mismatched durations") {
  CHECK_THROWS_AS(merge_boundaries(bs({0, 20}), bs({0, 20.5})), InvalidInput);
  CHECK_NOTHROW(merge_boundaries(bs({0, 20}), bs({0, 20.005})));
}

TEST_CASE("short gaps are coalesced into the following scene") {
  // 10.015 is more than epsilon but less than 2*epsilon after 10.0.
  CHECK(merge_boundaries(bs({0, 10.0, 20}), bs({0, 10.015, 20})) == bs({0, 10.0, 20}));
  // A cut right before the end folds into the last scene.
  CHECK(merge_boundaries(bs({0, 10, 20}), bs({0, 19.99, 20})) == bs({0, 10, 20}));
}

TEST_CASE("build_scenes examples") {
  auto one = build_scenes(bs({0, 20}));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Scene{0, TimeSpan(0, 20)});

  auto three = build_scenes(bs({0, 10, 12, 20}));
  REQUIRE(three.size() == 3);
  CHECK(three[1] == Scene{1, TimeSpan(10, 12)});
  CHECK(three[2] == Scene{2, TimeSpan(12, 20)});

  auto four = build_scenes(bs({0, 5, 10, 15, 20}));
  REQUIRE(four.size() == 4);
  for (const auto& s : four) CHECK(s.span.duration() == 5.0);
}

TEST_CASE("audio boundaries come from cue starts and ends") {
  std::vector<CaptionCue> cues{{TimeSpan(1.0, 2.5), "a"}, {TimeSpan(4.0, 6.0), "b"}};
  CHECK(audio_boundaries(cues, 10.0) == bs({0, 1.0, 2.5, 4.0, 6.0, 10.0}));
  CHECK(audio_boundaries({}, 10.0) == BoundarySet::trivial(10.0));
}

TEST_CASE("normalize_cues clips overlaps and drops blank text") {
  std::vector<CaptionCue> cues{{TimeSpan(2.0, 4.0), "second"},
                               {TimeSpan(1.0, 3.0), "first"},
                               {TimeSpan(5.0, 6.0), "   "}};
  auto out = normalize_cues(cues);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == CaptionCue{TimeSpan(1.0, 3.0), "first"});
  CHECK(out[1] == CaptionCue{TimeSpan(3.0, 4.0), "second"});
}

TEST_CASE("intersect_duration examples") {
  CHECK(intersect_duration(spans({{0, 10}}), spans({{5, 15}})) == 5.0);
  auto a = spans({{0, 3}, {5, 9}});
  CHECK(intersect_duration(a, a) == total_duration(a));
  CHECK(intersect_duration(spans({{0, 1}}), spans({{2, 3}})) == 0.0);
  CHECK_THROWS_AS(intersect_duration(spans({{0, 5}, {4, 6}}), spans({{0, 1}})), InvalidInput);
}

TEST_CASE("intersect_duration properties on random span lists") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double duration = 100.0;
  auto random_list = [&] {
    std::vector<TimeSpan> out;
    double t = 0;
    while (true) {
      t += u(rng) * 15.0;
      const double len = 0.1 + u(rng) * 10.0;
      if (t + len > duration) break;
      out.emplace_back(t, t + len);
      t += len;
    }
    return out;
  };
  auto as_pairs = [](const std::vector<TimeSpan>& v) {
    std::vector<oracle::Interval> out;
    for (const auto& s : v) out.emplace_back(s.start(), s.end());
    return out;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_list();
    const auto b = random_list();
    const double ab = intersect_duration(a, b);
    CHECK(ab == intersect_duration(b, a));
    CHECK(ab <= std::min(total_duration(a), total_duration(b)) + 1e-12);
    CHECK(ab >= total_duration(a) + total_duration(b) - duration - 1e-9);
    CHECK(ab == doctest::Approx(oracle::overlap(as_pairs(a), as_pairs(b))).epsilon(1e-12));
  }
}

TEST_CASE("segmented scenes stay inside shots and never split a cue") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double duration = 60.0;
    // Cues first, then shot cuts placed only in cue-free gaps.
    std::vector<CaptionCue> cues;
    std::vector<std::pair<double, double>> gaps;
    double t = 0;
    while (true) {
      const double gap = 0.5 + u(rng) * 4.0;
      const double len = 0.5 + u(rng) * 4.0;
      if (t + gap + len > duration - 0.5) {
        gaps.emplace_back(t, duration);
        break;
      }
      gaps.emplace_back(t, t + gap);
      cues.push_back({TimeSpan(t + gap, t + gap + len), "line"});
      t += gap + len;
    }
    std::vector<double> cuts;
    for (auto [g0, g1] : gaps) {
      if (u(rng) < 0.5) cuts.push_back(g0 + (g1 - g0) * u(rng));
    }
    const auto shots = BoundarySet::canonical(cuts, duration);
    const auto scenes = build_scenes(merge_boundaries(shots, audio_boundaries(cues, duration)));

    for (std::size_t i = 0; i < scenes.size(); ++i) {
      CHECK(scenes[i].id == static_cast<int>(i));
      if (i > 0) CHECK(scenes[i].span.start() == scenes[i - 1].span.end());
    }
    CHECK(scenes.front().span.start() == 0.0);
    CHECK(scenes.back().span.end() == duration);

    const auto& st = shots.timestamps();
    for (const auto& s : scenes) {
      int containing = 0;
      for (std::size_t k = 0; k + 1 < st.size(); ++k) {
        if (st[k] <= s.span.start() + 2 * kBoundaryEpsilon && s.span.end() <= st[k + 1] + 2 * kBoundaryEpsilon) {
          ++containing;
        }
      }
      CHECK(containing >= 1);
    }
    for (const auto& c : cues) {
      for (std::size_t i = 1; i < scenes.size(); ++i) {
        const double b = scenes[i].span.start();
        CHECK_FALSE((c.span.start() < b && b < c.span.end()));
      }
    }
  }
}
