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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mcvbench/metrics.hpp"
#include "reference_runs.hpp"
#include "test_support.hpp"

namespace mcvbench {
namespace {

using testing::kReferenceRuns;
using testing::reference_summaries;

TEST(PopStddevTest, Examples) {
  EXPECT_EQ(pop_stddev(std::vector<double>{2, 2, 2}), 0.0);
  EXPECT_NEAR(pop_stddev(std::vector<double>{1, 2, 3, 4}), 1.118034, 1e-6);
  EXPECT_THROW(pop_stddev(std::vector<double>{}), StatisticsError);
}

TEST(PopStddevTest, InvertsPublishedCv) {
  // sigma = CV * mu / 100 for AlexNet(clean).
  EXPECT_NEAR(2.28 * 85.25 / 100.0, 1.9437, 1e-4);
}

TEST(CvPercentTest, Examples) {
  EXPECT_EQ(cv_percent(std::vector<double>{5, 5, 5}), 0.0);
  EXPECT_NEAR(cv_percent(std::vector<double>{1, 2, 3, 4}), 44.7214, 1e-4);
  EXPECT_THROW(cv_percent(std::vector<double>{-1, 1}), StatisticsError);
}

TEST(CvPercentTest, ScaleInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(0.5, 1.0), scale(1e-3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(69);
    for (double& v : x) v = value(rng);
    const double alpha = scale(rng);
    std::vector<double> y = x;
    for (double& v : y) v *= alpha;
    EXPECT_NEAR(cv_percent(y), cv_percent(x), 1e-9 * std::max(1.0, cv_percent(x)));
  }
}

RunResults constant_run(const std::vector<Condition>& conditions, double acc) {
  RunResults r{"Net", "clean", {}};
  for (const Condition& c : conditions) r.rows.push_back({c.ordinal, c.label, 0, 0, acc});
  return r;
}

TEST(SummarizeRunTest, ConstantAccuracies) {
  const auto conditions = enumerate_conditions(GridConfig{});
  const RunSummary s = summarize_run(constant_run(conditions, 0.85), conditions);
  EXPECT_NEAR(s.mean_accuracy, 85.0, 1e-12);
  EXPECT_NEAR(s.cv, 0.0, 1e-12);
  EXPECT_NEAR(s.min_accuracy, 85.0, 1e-12);
  EXPECT_NEAR(s.max_accuracy, 85.0, 1e-12);
  ASSERT_TRUE(s.accu_clean.has_value());
  EXPECT_NEAR(*s.accu_clean, 85.0, 1e-12);
}

TEST(SummarizeRunTest, TwoConditionToy) {
  const RunSummary s = summarize_accuracies("Net", "clean", std::vector<double>{0.8, 0.9}, 0.9);
  EXPECT_NEAR(s.mean_accuracy, 85.0, 1e-12);
  EXPECT_NEAR(s.stddev, 5.0, 1e-12);
  EXPECT_NEAR(s.cv, 5.882353, 1e-6);
  EXPECT_LE(s.min_accuracy, s.mean_accuracy);
  EXPECT_LE(s.mean_accuracy, s.max_accuracy);
}

TEST(SummarizeRunTest, ReproducesEngineeredTableRows) {
  const auto conditions = enumerate_conditions(GridConfig{});
  for (const auto& row : kReferenceRuns) {
    const std::vector<double> pct = testing::engineer_accuracies(row, conditions.size(), 0);
    RunResults r{std::string(row.classifier), std::string(row.training), {}};
    for (std::size_t i = 0; i < conditions.size(); ++i)
      r.rows.push_back({conditions[i].ordinal, conditions[i].label, 0, 0, pct[i] / 100.0});
    const RunSummary s = summarize_run(r, conditions);
    EXPECT_NEAR(s.cv, row.cv, 1e-9) << s.display_name();
    EXPECT_NEAR(s.mean_accuracy, row.mean, 1e-9);
    EXPECT_NEAR(s.min_accuracy, row.min, 1e-9);
    EXPECT_NEAR(s.max_accuracy, row.max, 1e-9);
    EXPECT_NEAR(*s.accu_clean, row.clean, 1e-9);
  }
}

TEST(SummarizeRunTest, MissingConditionIsValidationError) {
  const auto conditions = enumerate_conditions(GridConfig{});
  RunResults r = constant_run(conditions, 0.5);
  r.rows.erase(r.rows.begin() + 3);
  EXPECT_EQ(coverage_gaps(r, conditions).size(), 1u);
  EXPECT_THROW(summarize_run(r, conditions), ValidationError);
}

TEST(SummarizeRunTest, DuplicateAndMislabelledRowsAreGaps) {
  const auto conditions = enumerate_conditions(GridConfig{});
  RunResults r = constant_run(conditions, 0.5);
  r.rows.push_back(r.rows[2]);
  r.rows[4].label = "SP0.9";
  r.rows[5].accuracy = 1.5;
  EXPECT_EQ(coverage_gaps(r, conditions).size(), 3u);
}

TEST(QuadrantTest, PublishedPlacements) {
  EXPECT_EQ(classify_quadrant(88.39, 1.92, 85.25, 2.28), QuadrantGroup::I);
  EXPECT_EQ(classify_quadrant(85.75, 3.33, 85.25, 2.28), QuadrantGroup::II);
  EXPECT_EQ(classify_quadrant(85.25, 2.28, 85.25, 2.28), QuadrantGroup::I);
  EXPECT_EQ(classify_quadrant(80.0, 2.0, 85.25, 2.28), QuadrantGroup::III);
  EXPECT_EQ(classify_quadrant(80.0, 3.0, 85.25, 2.28), QuadrantGroup::IV);
}

TEST(QuadrantTest, MonotoneInAccuracyAndCv) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ma(70, 100), cv(0, 5), step(0, 10);
  auto upper = [](QuadrantGroup g) { return g == QuadrantGroup::I || g == QuadrantGroup::II; };
  auto left = [](QuadrantGroup g) { return g == QuadrantGroup::I || g == QuadrantGroup::III; };
  for (int i = 0; i < 1000; ++i) {
    const double m = ma(rng), c = cv(rng), rm = ma(rng), rc = cv(rng), d = step(rng);
    const QuadrantGroup g = classify_quadrant(m, c, rm, rc);
    if (upper(g)) {
      EXPECT_TRUE(upper(classify_quadrant(m + d, c, rm, rc)));
    }
    if (left(g)) {
      EXPECT_TRUE(left(classify_quadrant(m, c - d, rm, rc)));
    }
  }
}

TEST(FamilyTest, FamilyOf) {
  EXPECT_EQ(family_of("clean"), Family::Clean);
  EXPECT_EQ(family_of("RL30"), Family::SingleFactor);
  EXPECT_EQ(family_of("GA0.1SP0.1"), Family::TwoFactor);
  EXPECT_THROW(family_of("SP0.1GA0.1RL30"), InputError);
  EXPECT_THROW(family_of("nonsense"), InputError);
}

// Oracle: plain column sums of the fixture divided by family sizes 3/12/12.
TEST(FamilyTest, AggregateOverReferenceTable) {
  const auto agg = family_aggregate(reference_summaries());
  ASSERT_EQ(agg.size(), 3u);
  const FamilyStats& clean = agg.at(Family::Clean);
  const FamilyStats& single = agg.at(Family::SingleFactor);
  const FamilyStats& two = agg.at(Family::TwoFactor);
  EXPECT_EQ(clean.count, 3u);
  EXPECT_EQ(single.count, 12u);
  EXPECT_EQ(two.count, 12u);
  EXPECT_NEAR(clean.cv, (2.28 + 2.56 + 3.98) / 3, 1e-9);
  EXPECT_NEAR(clean.mean_accuracy, (85.25 + 88.56 + 91.13) / 3, 1e-9);
  EXPECT_NEAR(clean.min_accuracy, (83.18 + 85.46 + 86.38) / 3, 1e-9);
  EXPECT_NEAR(clean.max_accuracy, (92.08 + 91.5 + 94.92) / 3, 1e-9);
  EXPECT_NEAR(single.cv, 21.91 / 12, 1e-9);
  EXPECT_NEAR(single.mean_accuracy, 1045.18 / 12, 1e-9);
  EXPECT_NEAR(single.min_accuracy, 1017.06 / 12, 1e-9);
  EXPECT_NEAR(single.max_accuracy, 1080.08 / 12, 1e-9);
  EXPECT_NEAR(two.cv, 16.99 / 12, 1e-9);
  EXPECT_NEAR(two.mean_accuracy, 1048.27 / 12, 1e-9);
  EXPECT_NEAR(two.min_accuracy, 1024.6 / 12, 1e-9);
  EXPECT_NEAR(two.max_accuracy, 1074.78 / 12, 1e-9);
}

TEST(FamilyTest, EmptyFamilyIsAbsent) {
  const auto agg = family_aggregate(std::vector<RunSummary>{testing::to_summary(kReferenceRuns[0])});
  EXPECT_EQ(agg.size(), 1u);
  EXPECT_FALSE(agg.contains(Family::TwoFactor));
  EXPECT_TRUE(family_aggregate(std::vector<RunSummary>{}).empty());
}

TEST(RanksTest, FractionalRanksAverageTies) {
  EXPECT_EQ(fractional_ranks(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(fractional_ranks(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
}

TEST(SpearmanTest, Examples) {
  EXPECT_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2}), -0.5);
  EXPECT_EQ(spearman(std::vector<double>{1, 5, 9, 12}, std::vector<double>{1, 5, 9, 12}), 1.0);
  // Tied ranks use Pearson on fractional ranks (scipy.stats.spearmanr reference).
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 3, 2, 4}), 0.9486832980505139, 1e-12);
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{1}), StatisticsError);
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), StatisticsError);
}

// Classic closed form and Pearson-on-ranks agree whenever ranks are distinct.
TEST(SpearmanTest, ClosedFormMatchesPearsonOnRanks) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(2 + t % 30), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n01(rng);
      y[i] = x[i] + n01(rng);
    }
    EXPECT_NEAR(spearman(x, y), pearson(fractional_ranks(x), fractional_ranks(y)), 1e-12);
  }
}

TEST(PearsonTest, Examples) {
  const std::vector<double> x{1, 2, 3};
  EXPECT_NEAR(pearson(x, x), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, std::vector<double>{-1, -2, -3}), -1.0, 1e-15);
  EXPECT_NEAR(pearson(x, std::vector<double>{1, 2, 4}), 0.981981, 1e-6);
  EXPECT_THROW(pearson(x, std::vector<double>{2, 2, 2}), StatisticsError);
}

TEST(CorrelationTest, PropertiesOnRandomVectors) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(3 + t % 40), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n01(rng);
      y[i] = 0.3 * x[i] + n01(rng);
    }
    const double p = pearson(x, y), s = spearman(x, y);
    EXPECT_LE(std::abs(p), 1.0);
    EXPECT_LE(std::abs(s), 1.0);
    EXPECT_NEAR(p, pearson(y, x), 1e-12);
    EXPECT_NEAR(s, spearman(y, x), 1e-12);
    std::vector<double> affine = x, monotone = x;
    for (double& v : affine) v = 3.5 * v - 2.0;
    for (double& v : monotone) v = std::exp(v);
    EXPECT_NEAR(pearson(affine, y), p, 1e-9);
    EXPECT_NEAR(spearman(monotone, y), s, 1e-12);
  }
}

// Reference values from scipy.stats over the 27 fixture rows.
TEST(CorrelationTest, ReferenceTableColumnsMatchIndependentReference) {
  std::vector<double> cv, ma, clean;
  for (const auto& r : kReferenceRuns) {
    cv.push_back(r.cv);
    ma.push_back(r.mean);
    clean.push_back(r.clean);
  }
  EXPECT_NEAR(spearman(cv, ma), 0.179875, 1e-6);
  EXPECT_NEAR(pearson(cv, ma), 0.294728, 1e-6);
  EXPECT_NEAR(spearman(cv, clean), 0.382654, 1e-6);
  EXPECT_NEAR(pearson(cv, clean), 0.440279, 1e-6);
  EXPECT_NEAR(spearman(ma, clean), 0.821123, 1e-6);
  EXPECT_NEAR(pearson(ma, clean), 0.889081, 1e-6);
}

}  // namespace
}  // namespace mcvbench
