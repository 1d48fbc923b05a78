// Copyright 2026 The mcvbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCVBENCH_METRICS_HPP
#define MCVBENCH_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcvbench/condition_grid.hpp"
#include "mcvbench/errors.hpp"

namespace mcvbench {

// ---------------------------------------------------------------------------
// Descriptive statistics
// ---------------------------------------------------------------------------

inline double mean(std::span<const double> values) {
  if (values.empty()) throw StatisticsError("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

/// Population standard deviation (divides by n).
inline double pop_stddev(std::span<const double> values) {
  const double mu = mean(values);
  double ss = 0.0;
  for (double x : values) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

/// Coefficient of variation in percent: 100 * sigma / mu.
inline double cv_percent(std::span<const double> values) {
  const double mu = mean(values);
  if (mu == 0.0) throw StatisticsError("coefficient of variation undefined for zero mean");
  return 100.0 * pop_stddev(values) / mu;
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct ConditionResult {
  std::uint64_t ordinal = 0;
  std::string label;
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  double accuracy = 0.0;  // fraction in [0,1]

  friend bool operator==(const ConditionResult&, const ConditionResult&) = default;
};

/// Per-condition accuracies of one trained classifier.
struct RunResults {
  std::string classifier_name;
  std::string training_label;
  std::vector<ConditionResult> rows;
};

/// Statistics of one run, in percent.
struct RunSummary {
  std::string classifier_name;
  std::string training_label;
  double mean_accuracy = 0.0;
  double stddev = 0.0;
  double cv = 0.0;
  double min_accuracy = 0.0;
  double max_accuracy = 0.0;
  std::optional<double> accu_clean;

  /// "AlexNet(clean)" style identifier.
  std::string display_name() const { return classifier_name + "(" + training_label + ")"; }

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Coverage problems of `results` against the manifest's conditions; empty when valid.
inline std::vector<std::string> coverage_gaps(const RunResults& results,
                                              std::span<const Condition> conditions) {
  std::vector<std::string> gaps;
  std::map<std::uint64_t, int> seen;
  std::map<std::uint64_t, const Condition*> by_ordinal;
  for (const Condition& c : conditions) by_ordinal[c.ordinal] = &c;
  for (const ConditionResult& r : results.rows) {
    auto it = by_ordinal.find(r.ordinal);
    if (it == by_ordinal.end()) {
      gaps.push_back("unknown condition ordinal " + std::to_string(r.ordinal));
      continue;
    }
    if (++seen[r.ordinal] == 2) gaps.push_back("duplicate condition " + it->second->directory());
    if (r.label != it->second->label) {
      gaps.push_back("ordinal " + std::to_string(r.ordinal) + " labelled '" + r.label +
                     "', manifest says '" + it->second->label + "'");
    }
    if (!(r.accuracy >= 0.0 && r.accuracy <= 1.0)) {
      gaps.push_back("accuracy out of [0,1] for " + it->second->directory());
    }
  }
  for (const Condition& c : conditions) {
    if (!seen.contains(c.ordinal)) gaps.push_back("missing condition " + c.directory());
  }
  return gaps;
}

/// Summary over raw per-condition accuracy fractions.
inline RunSummary summarize_accuracies(std::string classifier_name, std::string training_label,
                                       std::span<const double> fractions,
                                       std::optional<double> clean_fraction) {
  if (fractions.empty()) throw StatisticsError("run has no conditions");
  std::vector<double> pct;
  pct.reserve(fractions.size());
  for (double f : fractions) pct.push_back(100.0 * f);
  RunSummary s;
  s.classifier_name = std::move(classifier_name);
  s.training_label = std::move(training_label);
  s.mean_accuracy = mean(pct);
  s.stddev = pop_stddev(pct);
  s.cv = cv_percent(pct);
  const auto [lo, hi] = std::minmax_element(pct.begin(), pct.end());
  s.min_accuracy = *lo;
  s.max_accuracy = *hi;
  if (clean_fraction) s.accu_clean = 100.0 * *clean_fraction;
  return s;
}

/// Mean, CV, extrema and clean accuracy over every condition of the manifest.
/// Throws ValidationError listing every gap when coverage is incomplete.
inline RunSummary summarize_run(const RunResults& results, std::span<const Condition> conditions) {
  const std::vector<std::string> gaps = coverage_gaps(results, conditions);
  if (!gaps.empty()) {
    std::string msg = results.classifier_name + "(" + results.training_label + ") does not match manifest:";
    for (const std::string& g : gaps) msg += "\n  " + g;
    throw ValidationError(msg);
  }
  std::optional<double> clean;
  for (const Condition& c : conditions) {
    if (c.grid == GridKind::Clean) {
      for (const ConditionResult& r : results.rows)
        if (r.ordinal == c.ordinal) clean = r.accuracy;
    }
  }
  std::vector<double> fractions;
  for (const ConditionResult& r : results.rows) fractions.push_back(r.accuracy);
  return summarize_accuracies(results.classifier_name, results.training_label, fractions, clean);
}

// ---------------------------------------------------------------------------
// Quadrants and families
// ---------------------------------------------------------------------------

enum class QuadrantGroup { I, II, III, IV };

inline std::string_view to_string(QuadrantGroup g) {
  switch (g) {
    case QuadrantGroup::I: return "I";
    case QuadrantGroup::II: return "II";
    case QuadrantGroup::III: return "III";
    case QuadrantGroup::IV: return "IV";
  }
  return "?";
}

/// Places (mean accuracy, CV) relative to a reference run. Both comparisons
/// are inclusive towards the better side, so the reference itself is Group I.
constexpr QuadrantGroup classify_quadrant(double ma, double cv, double ref_ma, double ref_cv) noexcept {
  if (ma >= ref_ma) return cv <= ref_cv ? QuadrantGroup::I : QuadrantGroup::II;
  return cv <= ref_cv ? QuadrantGroup::III : QuadrantGroup::IV;
}

inline QuadrantGroup classify_quadrant(const RunSummary& s, const RunSummary& reference) noexcept {
  return classify_quadrant(s.mean_accuracy, s.cv, reference.mean_accuracy, reference.cv);
}

enum class Family { Clean, SingleFactor, TwoFactor };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Clean: return "clean";
    case Family::SingleFactor: return "single_factor";
    case Family::TwoFactor: return "two_factor";
  }
  return "?";
}

inline Family family_of(std::string_view training_label) {
  switch (parse_label(training_label).size()) {
    case 0: return Family::Clean;
    case 1: return Family::SingleFactor;
    case 2: return Family::TwoFactor;
    default: throw InputError("no family for label '" + std::string(training_label) + "'");
  }
}

struct FamilyStats {
  std::size_t count = 0;
  double cv = 0.0;
  double mean_accuracy = 0.0;
  double min_accuracy = 0.0;
  double max_accuracy = 0.0;
};

/// Unweighted per-family means. Families with no summaries are absent.
inline std::map<Family, FamilyStats> family_aggregate(std::span<const RunSummary> summaries) {
  std::map<Family, FamilyStats> out;
  for (const RunSummary& s : summaries) {
    FamilyStats& f = out[family_of(s.training_label)];
    ++f.count;
    f.cv += s.cv;
    f.mean_accuracy += s.mean_accuracy;
    f.min_accuracy += s.min_accuracy;
    f.max_accuracy += s.max_accuracy;
  }
  for (auto& [family, f] : out) {
    const double n = static_cast<double>(f.count);
    f.cv /= n;
    f.mean_accuracy /= n;
    f.min_accuracy /= n;
    f.max_accuracy /= n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw StatisticsError("correlation inputs differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  if (x.size() < 2) throw StatisticsError("correlation needs at least two pairs");
}

}  // namespace detail

/// 1-based ranks; tied values share the average of the ranks they span.
inline std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw StatisticsError("correlation undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Spearman rank correlation: Pearson on fractional ranks. Without ties this
/// equals 1 - 6*sum(d^2) / (n(n^2-1)).
inline double spearman(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const std::vector<double> rx = fractional_ranks(x);
  const std::vector<double> ry = fractional_ranks(y);
  auto distinct = [](std::vector<double> r) {
    std::sort(r.begin(), r.end());
    return std::adjacent_find(r.begin(), r.end()) == r.end();
  };
  if (distinct(rx) && distinct(ry)) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double n = static_cast<double>(rx.size());
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  }
  return pearson(rx, ry);
}

}  // namespace mcvbench

#endif  // MCVBENCH_METRICS_HPP
