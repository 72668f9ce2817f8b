#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "vsum/semantic_analyzer.hpp"
#include "vsum/timeline.hpp"

namespace vsum {

enum class Strategy { kKnapsack, kGreedy };

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view name);  // throws InvalidInput

inline constexpr double kKnapsackMaxDuration = 300.0;  // seconds
inline constexpr double kDefaultBudgetRatio = 0.15;

// Knapsack below five minutes, greedy from there on.
Strategy choose_strategy(double total_duration);

struct SummarySelection {
  std::vector<int> scenes;    // ascending
  double total_duration = 0;  // seconds
  double budget = 0;          // seconds
  long long total_weight = 0;  // deciseconds
  long long capacity = 0;      // deciseconds
  Strategy strategy = Strategy::kKnapsack;
  // Sum of max(score, 0) over the selection, accumulated from the highest
  // scene id down.
  double objective = 0;
  bool warning = false;  // nothing selected
};

// Duration in deciseconds, rounded half up.
long long decisecond_weight(double seconds);
// floor(ratio * total * 10).
long long decisecond_capacity(double budget_ratio, double total_seconds);

// Exact 0/1 knapsack over decisecond weights and clamped scores. Ties go to the
// smaller total weight, then to the lexicographically smallest id list.
SummarySelection select_knapsack(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                                 double budget_ratio);

// Descending score, ties by id; skips scenes that would overflow and scenes
// with non-positive score.
SummarySelection select_greedy(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                               double budget_ratio);

SummarySelection select_scenes(std::span<const Scene> scenes, std::span<const SaliencyScore> scores,
                               double budget_ratio, Strategy strategy);

}  // namespace vsum
