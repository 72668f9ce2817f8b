#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vsum/timeline.hpp"

namespace vsum {

struct Prf {
  double precision = 0;
  double recall = 0;
  double f = 0;  // percent
  bool degenerate = false;  // both span lists empty
};

// Keyshot precision, recall and F-score (in percent) from overlap durations.
// Inputs are normalized (sorted, merged) first.
Prf prf(std::span<const TimeSpan> predicted, std::span<const TimeSpan> ground_truth);

struct EvalPair {
  std::string video;
  std::vector<std::string> query;
  std::vector<TimeSpan> predicted;
  std::vector<TimeSpan> ground_truth;
};

struct PairResult {
  std::string video;
  std::vector<std::string> query;
  Prf score;
};

struct EvalReport {
  std::vector<PairResult> pairs;
  double overall = 0;
  std::map<std::string, double> per_genre;        // single-genre queries only
  std::map<std::size_t, double> per_query_size;   // 1, 2, 3
};

// Unweighted mean of per-pair F overall, per single genre and per query size.
EvalReport evaluate_dataset(std::span<const EvalPair> pairs);

inline constexpr double kBudgetSlack = 0.05;  // seconds

// total(predicted) <= cap * duration + 0.05 s.
bool budget_check(std::span<const TimeSpan> predicted, double duration, double cap = 0.15);

// Column abbreviations used by the genre table: Ac, Ani, Bio, Com, Cri, Drm,
// Fmy, Fntsy, Hrrr, Myst, Rom, ScF, Thrl.
const std::vector<std::pair<std::string, std::string>>& genre_table_columns();

// Header plus one row: Model,Overall,<abbreviations...>. Genres without pairs
// are left blank.
std::string genre_table_csv(const EvalReport& report, const std::string& model);
// Header plus one row: Model,1,2,3.
std::string query_size_table_csv(const EvalReport& report, const std::string& model);

}  // namespace vsum
