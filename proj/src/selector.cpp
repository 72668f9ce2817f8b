#include "vsum/selector.hpp"

#include <algorithm>
#include <cmath>

#include "vsum/error.hpp"

namespace vsum {

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::kKnapsack ? "knapsack" : "greedy";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "knapsack") return Strategy::kKnapsack;
  if (name == "greedy") return Strategy::kGreedy;
  throw InvalidInput("unknown selection strategy '" + std::string(name) + "'");
}

Strategy choose_strategy(double total_duration) {
  if (!(total_duration > 0.0)) throw InvalidInput("total duration must be positive");
  return total_duration < kKnapsackMaxDuration ? Strategy::kKnapsack : Strategy::kGreedy;
}

long long decisecond_weight(double seconds) {
  return static_cast<long long>(std::floor(seconds * 10.0 + 0.5));
}

long long decisecond_capacity(double budget_ratio, double total_seconds) {
  // The small offset absorbs representation error such as 0.15 * 100 * 10 =
  // 149.99999999999997.
  return static_cast<long long>(std::floor(budget_ratio * total_seconds * 10.0 + 1e-9));
}

namespace {

struct Problem {
  std::vector<long long> weights;
  std::vector<double> values;
  long long capacity = 0;
  double total = 0;
};

Problem prepare(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                double budget_ratio) {
  if (scenes.empty()) throw InvalidInput("no scenes to select from");
  if (scores.size() != scenes.size()) throw InvalidInput("one score per scene required");
  if (!(budget_ratio > 0.0 && budget_ratio < 1.0)) throw InvalidInput("budget ratio must be in (0, 1)");
  Problem p;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (scores[i].scene != scenes[i].id) throw InvalidInput("scores are not aligned with scenes");
    if (i > 0 && scenes[i].id <= scenes[i - 1].id) throw InvalidInput("scene ids must be ascending");
    p.weights.push_back(decisecond_weight(scenes[i].span.duration()));
    p.values.push_back(std::max(scores[i].score, 0.0));
    p.total += scenes[i].span.duration();
  }
  p.capacity = decisecond_capacity(budget_ratio, p.total);
  return p;
}

SummarySelection finish(std::span<const Scene> scenes, const Problem& p, std::vector<std::size_t> picked,
                        Strategy strategy) {
  std::sort(picked.begin(), picked.end());
  SummarySelection sel;
  sel.strategy = strategy;
  sel.capacity = p.capacity;
  sel.budget = static_cast<double>(p.capacity) / 10.0;
  for (auto i : picked) {
    sel.scenes.push_back(scenes[i].id);
    sel.total_duration += scenes[i].span.duration();
    sel.total_weight += p.weights[i];
  }
  for (auto it = picked.rbegin(); it != picked.rend(); ++it) sel.objective += p.values[*it];
  sel.warning = sel.scenes.empty();
  return sel;
}

}  // namespace

SummarySelection select_knapsack(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                                 double budget_ratio) {
  const auto p = prepare(scenes, scores, budget_ratio);
  const std::size_t n = scenes.size();
  const auto cap = static_cast<std::size_t>(std::max(p.capacity, 0LL));

  // Items are added from the highest index down, so each cell's set is built
  // by prepending a smaller id. That keeps the lexicographic tie-break and the
  // floating-point sum order consistent across cells.
  struct Cell {
    double value = 0;
    long long weight = 0;
    bool empty = true;
  };
  std::vector<Cell> best(cap + 1);
  std::vector<std::vector<char>> take(n, std::vector<char>(cap + 1, 0));
  for (std::size_t k = n; k-- > 0;) {
    const auto w = static_cast<std::size_t>(p.weights[k]);
    if (w > cap) continue;
    for (std::size_t c = cap + 1; c-- > w;) {
      const Cell& skip = best[c];
      const Cell& base = best[c - w];
      const Cell with{base.value + p.values[k], base.weight + p.weights[k], false};
      bool better = with.value > skip.value;
      if (with.value == skip.value) {
        better = with.weight < skip.weight || (with.weight == skip.weight && !skip.empty);
      }
      if (better) {
        best[c] = with;
        take[k][c] = 1;
      }
    }
  }

  std::vector<std::size_t> picked;
  std::size_t c = cap;
  for (std::size_t k = 0; k < n; ++k) {
    if (take[k][c]) {
      picked.push_back(k);
      c -= static_cast<std::size_t>(p.weights[k]);
    }
  }
  return finish(scenes, p, std::move(picked), Strategy::kKnapsack);
}

SummarySelection select_greedy(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                               double budget_ratio) {
  const auto p = prepare(scenes, scores, budget_ratio);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (p.values[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.values[a] > p.values[b]; });
  std::vector<std::size_t> picked;
  long long used = 0;
  for (auto i : order) {
    if (used + p.weights[i] > p.capacity) continue;
    used += p.weights[i];
    picked.push_back(i);
  }
  return finish(scenes, p, std::move(picked), Strategy::kGreedy);
}

SummarySelection select_scenes(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                               double budget_ratio, Strategy strategy) {
  return strategy == Strategy::kKnapsack ? select_knapsack(scenes, scores, budget_ratio)
                                         : select_greedy(scenes, scores, budget_ratio);
}

}  // namespace vsum
