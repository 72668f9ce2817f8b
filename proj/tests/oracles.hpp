#pragma once

// Brute-force reference computations used only by tests. None of these call
// into the library's arithmetic paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Interval = std::pair<double, double>;

inline bool covers(const std::vector<Interval>& spans, double x) {
  for (const auto& [a, b] : spans) {
    if (a <= x && x < b) return true;
  }
  return false;
}

// Overlap by elementary segments: every gap between consecutive endpoints is
// either fully inside or fully outside each list; probe its midpoint.
inline double overlap(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<double> pts;
  for (const auto& [s, e] : a) pts.insert(pts.end(), {s, e});
  for (const auto& [s, e] : b) pts.insert(pts.end(), {s, e});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    if (covers(a, mid) && covers(b, mid)) total += pts[i + 1] - pts[i];
  }
  return total;
}

inline double covered(const std::vector<Interval>& a) { return overlap(a, a); }

struct Prf {
  double p, r, f;
};

inline Prf prf(const std::vector<Interval>& pred, const std::vector<Interval>& gt) {
  const double o = overlap(pred, gt);
  const double tp = covered(pred), tg = covered(gt);
  const double p = tp > 0 ? o / tp : 0.0;
  const double r = tg > 0 ? o / tg : 0.0;
  return {p, r, p + r > 0 ? 2 * p * r / (p + r) * 100.0 : 0.0};
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double cos(const std::vector<double>& a, const std::vector<double>& b) {
  return dot(a, b) / (std::sqrt(dot(a, a)) * std::sqrt(dot(b, b)));
}

struct KnapsackBest {
  double value = 0;
  std::vector<int> ids;
  long long weight = 0;
};

// Exhaustive 0/1 knapsack. Values are summed from the highest id down, which
// is the order the production objective uses, so the optimum compares exactly.
inline KnapsackBest knapsack(const std::vector<long long>& w, const std::vector<double>& v, long long cap) {
  const std::size_t n = w.size();
  KnapsackBest best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long weight = 0;
    double value = 0;
    std::vector<int> ids;
    for (std::size_t k = n; k-- > 0;) {
      if (mask >> k & 1) {
        weight += w[k];
        value += std::max(v[k], 0.0);
      }
    }
    if (weight > cap) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) ids.push_back(static_cast<int>(k));
    }
    const bool better = value > best.value ||
                        (value == best.value && (weight < best.weight ||
                                                 (weight == best.weight && ids < best.ids)));
    if (mask == 0 || better) best = {value, ids, weight};
  }
  return best;
}

// Greedy ground-truth pick re-derived from the textual rule.
inline std::vector<int> greedy_gt(const std::vector<double>& durations, const std::vector<double>& conf,
                                  double ratio) {
  double total = 0;
  for (double d : durations) total += d;
  std::vector<int> idx;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    if (conf[i] != -std::numeric_limits<double>::infinity()) idx.push_back(static_cast<int>(i));
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return conf[a] > conf[b] || (conf[a] == conf[b] && a < b); });
  std::vector<int> out;
  double used = 0;
  for (int i : idx) {
    if (used + durations[i] <= ratio * total + 1e-9) {
      used += durations[i];
      out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
