#include "vsum/evaluator.hpp"

#include <cstdio>

#include "vsum/error.hpp"

namespace vsum {

Prf prf(std::span<const TimeSpan> predicted, std::span<const TimeSpan> ground_truth) {
  const auto pred = normalize_spans({predicted.begin(), predicted.end()});
  const auto gt = normalize_spans({ground_truth.begin(), ground_truth.end()});
  Prf r;
  if (pred.empty() && gt.empty()) {
    r.degenerate = true;
    return r;
  }
  const double overlap = intersect_duration(pred, gt);
  const double pred_total = total_duration(pred);
  const double gt_total = total_duration(gt);
  r.precision = pred.empty() ? 0.0 : overlap / pred_total;
  r.recall = gt.empty() ? 0.0 : overlap / gt_total;
  const double sum = r.precision + r.recall;
  r.f = sum > 0.0 ? 2.0 * r.precision * r.recall / sum * 100.0 : 0.0;
  return r;
}

EvalReport evaluate_dataset(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw InvalidInput("no evaluation pairs");
  EvalReport report;
  std::map<std::string, std::pair<double, std::size_t>> genre_acc;
  std::map<std::size_t, std::pair<double, std::size_t>> size_acc;
  double total = 0.0;
  for (const auto& p : pairs) {
    PairResult r{p.video, p.query, prf(p.predicted, p.ground_truth)};
    total += r.score.f;
    if (p.query.size() == 1) {
      auto& a = genre_acc[p.query.front()];
      a.first += r.score.f;
      ++a.second;
    }
    auto& s = size_acc[p.query.size()];
    s.first += r.score.f;
    ++s.second;
    report.pairs.push_back(std::move(r));
  }
  report.overall = total / static_cast<double>(pairs.size());
  for (const auto& [g, a] : genre_acc) report.per_genre[g] = a.first / static_cast<double>(a.second);
  for (const auto& [n, a] : size_acc) report.per_query_size[n] = a.first / static_cast<double>(a.second);
  return report;
}

bool budget_check(std::span<const TimeSpan> predicted, double duration, double cap) {
  const auto merged = normalize_spans({predicted.begin(), predicted.end()});
  return total_duration(merged) <= cap * duration + kBudgetSlack;
}

const std::vector<std::pair<std::string, std::string>>& genre_table_columns() {
  static const std::vector<std::pair<std::string, std::string>> kColumns = {
      {"Action", "Ac"},    {"Animation", "Ani"}, {"Biography", "Bio"}, {"Comedy", "Com"},
      {"Crime", "Cri"},    {"Drama", "Drm"},     {"Family", "Fmy"},    {"Fantasy", "Fntsy"},
      {"Horror", "Hrrr"},  {"Mystery", "Myst"},  {"Romantic", "Rom"},  {"SciFi", "ScF"},
      {"Thriller", "Thrl"}};
  return kColumns;
}

namespace {

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string genre_table_csv(const EvalReport& report, const std::string& model) {
  std::string header = "Model,Overall";
  std::string row = model + "," + fmt1(report.overall);
  for (const auto& [genre, abbr] : genre_table_columns()) {
    header += "," + abbr;
    row += ",";
    if (auto it = report.per_genre.find(genre); it != report.per_genre.end()) row += fmt1(it->second);
  }
  return header + "\n" + row + "\n";
}

std::string query_size_table_csv(const EvalReport& report, const std::string& model) {
  std::string header = "Model";
  std::string row = model;
  for (std::size_t n = 1; n <= 3; ++n) {
    header += "," + std::to_string(n);
    row += ",";
    if (auto it = report.per_query_size.find(n); it != report.per_query_size.end()) row += fmt1(it->second);
  }
  return header + "\n" + row + "\n";
}

}  // namespace vsum
