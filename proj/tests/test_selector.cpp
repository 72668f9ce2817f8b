#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vsum/error.hpp"
#include "vsum/selector.hpp"

using namespace vsum;

namespace {

struct Case {
  std::vector<Scene> scenes;
  std::vector<SaliencyScore> scores;
  double total = 0;
};

Case make(const std::vector<double>& durations, const std::vector<double>& values) {
  Case c;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    c.scenes.push_back({static_cast<int>(i), TimeSpan(c.total, c.total + durations[i])});
    c.scores.push_back({static_cast<int>(i), values[i]});
    c.total += durations[i];
  }
  return c;
}

}  // namespace

TEST_CASE("strategy threshold") {
  CHECK(choose_strategy(299.0) == Strategy::kKnapsack);
  CHECK(choose_strategy(300.0) == Strategy::kGreedy);
  CHECK(choose_strategy(3600.0) == Strategy::kGreedy);
  CHECK(parse_strategy("greedy") == Strategy::kGreedy);
  CHECK_THROWS_AS(parse_strategy("dp"), InvalidInput);
}

TEST_CASE("decisecond weights") {
  CHECK(decisecond_weight(1.25) == 13);
  CHECK(decisecond_weight(1.24) == 12);
  CHECK(decisecond_capacity(0.15, 100.0) == 150);
  CHECK(decisecond_capacity(0.34, 30.0) == 102);
}

TEST_CASE("knapsack examples") {
  auto a = make({10, 10, 10}, {3, 2, 1});
  const auto ra = select_knapsack(a.scenes, a.scores, 0.34);
  CHECK(ra.scenes == std::vector<int>{0});

  auto b = make({6, 5, 5}, {5, 4, 4});
  const auto rb = select_knapsack(b.scenes, b.scores, 0.625);
  CHECK(rb.scenes == std::vector<int>{1, 2});
  CHECK(rb.objective == 8.0);
  CHECK(rb.total_weight == 100);

  auto c = make({50, 60}, {1, 1});
  const auto rc = select_knapsack(c.scenes, c.scores, 0.15);
  CHECK(rc.scenes.empty());
  CHECK(rc.warning);
}

TEST_CASE("knapsack matches exhaustive search") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(u(rng) * 12);
    std::vector<double> d, v;
    for (int i = 0; i < n; ++i) {
      d.push_back(0.5 + std::round(u(rng) * 100) / 10);
      v.push_back(u(rng) * 4 - 1);
    }
    if (trial % 5 == 0) std::fill(v.begin(), v.end(), 1.0);  // heavy ties
    auto c = make(d, v);
    const double ratio = 0.05 + u(rng) * 0.6;
    const auto got = select_knapsack(c.scenes, c.scores, ratio);
    std::vector<long long> w;
    for (double x : d) w.push_back(decisecond_weight(x));
    const auto want = oracle::knapsack(w, v, decisecond_capacity(ratio, c.total));
    CHECK(got.objective == want.value);
    CHECK(got.scenes == want.ids);
    CHECK(got.total_weight <= got.capacity);
    CHECK(got.total_duration <= ratio * c.total + 0.05 * static_cast<double>(got.scenes.size()) + 1e-9);

    const auto greedy = select_greedy(c.scenes, c.scores, ratio);
    CHECK(greedy.objective <= got.objective + 1e-12);
    CHECK(greedy.total_duration <= ratio * c.total + 1e-9);

    // More budget never lowers the optimum.
    const auto wider = select_knapsack(c.scenes, c.scores, std::min(0.99, ratio + 0.1));
    CHECK(wider.objective >= got.objective);
  }
}

TEST_CASE("greedy selection") {
  auto c = make({10, 10, 10, 10}, {0.5, 0.9, -0.2, 0.9});
  const auto r = select_greedy(c.scenes, c.scores, 0.5);
  CHECK(r.scenes == std::vector<int>{1, 3});
  const auto all = select_greedy(c.scenes, c.scores, 0.99);
  CHECK(all.scenes == std::vector<int>{0, 1, 3});  // non-positive scene skipped
  CHECK(select_scenes(c.scenes, c.scores, 0.5, Strategy::kKnapsack).scenes == r.scenes);
}

TEST_CASE("selector rejects bad input") {
  auto c = make({10, 10}, {1, 1});
  CHECK_THROWS_AS(select_knapsack(c.scenes, c.scores, 0.0), InvalidInput);
  CHECK_THROWS_AS(select_knapsack(c.scenes, c.scores, 1.5), InvalidInput);
  c.scores.pop_back();
  CHECK_THROWS_AS(select_knapsack(c.scenes, c.scores, 0.5), InvalidInput);
}
