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

// Drives the mcvbench executable end to end through its documented flags,
// exit codes and file formats.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace mcvbench {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct RunOutcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  RunOutcome run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "env -u MCVBENCH_SEED " + env + " '" + std::string(MCVBENCH_CLI_PATH) + "' " + args +
                            " > '" + (tmp_ / "stdout.txt").string() + "' 2> '" + (tmp_ / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(tmp_ / "stdout.txt"), slurp(tmp_ / "stderr.txt")};
  }

  std::string q(const fs::path& p) const { return "'" + p.string() + "'"; }

  BenchmarkManifest make_corpus(int images = 2) {
    testing::write_toy_corpus(tmp_ / "src", images, 8, 8);
    return generate_corpus(tmp_ / "src", tmp_ / "corpus", GridConfig{}, 5, {2});
  }

  std::vector<std::string> write_alexnet_results(const BenchmarkManifest& m) {
    std::vector<std::string> paths;
    const auto conditions = conditions_of(m);
    for (const auto& row : testing::kReferenceRuns) {
      if (row.classifier != "AlexNet") continue;
      const fs::path p = tmp_ / ("alexnet_" + std::string(row.training) + ".csv");
      write_results(p, testing::engineered_results(row, conditions), m.digest);
      paths.push_back(q(p));
    }
    return paths;
  }

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += x + " ";
    return s;
  }

  TempDir tmp_;
};

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, GenerateMissingCorpusIsUsageError) {
  EXPECT_EQ(run("generate --out " + q(tmp_ / "o") + " --seed 1").code, 2);
}

TEST_F(CliTest, GenerateNeedsSeedOrEnvironment) {
  testing::write_toy_corpus(tmp_ / "src", 2, 8, 8);
  EXPECT_EQ(run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o")).code, 2);
  const RunOutcome ok = run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o"), "MCVBENCH_SEED=5");
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(load_manifest(tmp_ / "o" / "manifest.json").master_seed, 5u);
  EXPECT_EQ(run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o2"), "MCVBENCH_SEED=abc").code, 2);
}

TEST_F(CliTest, GenerateFullSizeCorpus) {
  testing::write_toy_corpus(tmp_ / "src", 500, 8, 8);
  const RunOutcome r = run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o") + " --seed 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "69 conditions, 34500 images");
  const BenchmarkManifest m = load_manifest(tmp_ / "o" / "manifest.json");
  EXPECT_NE(r.out.find("manifest digest: " + m.digest), std::string::npos);
  std::size_t pngs = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp_ / "o")) pngs += e.path().extension() == ".png";
  EXPECT_EQ(pngs, 34500u);
}

TEST_F(CliTest, GenerateCustomLevels) {
  testing::write_toy_corpus(tmp_ / "src", 1, 8, 8);
  const RunOutcome r = run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o") +
                           " --seed 3 --sp-levels 0.1,0.15,0.2");
  ASSERT_EQ(r.code, 0) << r.err;
  // 3x4 + 4x3 + 3x5 + 5x3 cells, no all-identity cell, so no clean set.
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "54 conditions, 54 images");
  EXPECT_EQ(run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o3") + " --seed 3 --sp-levels 0.2,0.1").code, 2);
}

TEST_F(CliTest, GenerateMixedSizesIsInputError) {
  testing::write_toy_corpus(tmp_ / "src", 2, 8, 8);
  write_png(tmp_ / "src" / "odd.png", Image(3, 3));
  const RunOutcome r = run("generate --corpus " + q(tmp_ / "src") + " --out " + q(tmp_ / "o") + " --seed 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("odd.png"), std::string::npos);
}

TEST_F(CliTest, AnalyzePlacesAlexNetRuns) {
  const BenchmarkManifest m = make_corpus();
  const auto results = write_alexnet_results(m);
  const RunOutcome r = run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " +
                           join(results) + "--reference 'AlexNet(clean)' --out " + q(tmp_ / "analysis.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(tmp_ / "analysis.json"));
  std::map<std::string, std::string> groups;
  for (const auto& e : doc.at("quadrants")) groups[e.at("run")] = e.at("group");
  EXPECT_EQ(groups.size(), 9u);
  EXPECT_EQ(groups["AlexNet(SP0.1RL30)"], "I");
  EXPECT_EQ(groups["AlexNet(RL30)"], "II");
  EXPECT_EQ(groups["AlexNet(clean)"], "I");
  EXPECT_EQ(doc.at("summaries").size(), 9u);
  EXPECT_TRUE(doc.at("families").contains("two_factor"));
  EXPECT_NE(r.out.find("AlexNet(SP0.1RL30): Group I\n"), std::string::npos);
  for (const auto& s : doc.at("summaries")) {
    if (s.at("training_label") == "clean") {
      EXPECT_NEAR(s.at("cv").get<double>(), 2.28, 1e-3);
      EXPECT_NEAR(s.at("mean_accuracy").get<double>(), 85.25, 1e-3);
    }
  }
}

TEST_F(CliTest, AnalyzeSingleRunIsItsOwnReference) {
  const BenchmarkManifest m = make_corpus();
  const fs::path p = tmp_ / "only.csv";
  write_results(p, testing::engineered_results(testing::kReferenceRuns[9], conditions_of(m)), m.digest);
  const RunOutcome r = run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " + q(p) +
                           " --reference 'ResNet50(clean)'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("quadrants")[0].at("group"), "I");
}

TEST_F(CliTest, AnalyzeMissingRowIsValidationFailure) {
  const BenchmarkManifest m = make_corpus();
  RunResults res = testing::engineered_results(testing::kReferenceRuns[0], conditions_of(m));
  res.rows.erase(res.rows.begin() + 12);
  write_results(tmp_ / "gap.csv", res, m.digest);
  const RunOutcome r = run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " +
                           q(tmp_ / "gap.csv") + " --reference 'AlexNet(clean)'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("missing condition " + m.conditions[12].condition.directory()), std::string::npos);
}

TEST_F(CliTest, AnalyzeWrongManifestDigestIsValidationFailure) {
  const BenchmarkManifest m = make_corpus();
  write_results(tmp_ / "r.csv", testing::engineered_results(testing::kReferenceRuns[0], conditions_of(m)), "deadbeef");
  EXPECT_EQ(run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " + q(tmp_ / "r.csv") +
                " --reference 'AlexNet(clean)'").code, 3);
}

TEST_F(CliTest, AnalyzeUnknownReferenceIsInputError) {
  const BenchmarkManifest m = make_corpus();
  write_results(tmp_ / "r.csv", testing::engineered_results(testing::kReferenceRuns[0], conditions_of(m)), m.digest);
  EXPECT_EQ(run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " + q(tmp_ / "r.csv") +
                " --reference 'VGG-19(clean)'").code, 2);
}

class CliSummariesTest : public CliTest {
 protected:
  fs::path write_summaries(const std::vector<RunSummary>& summaries, const std::string& name) {
    nlohmann::json arr = nlohmann::json::array();
    for (const RunSummary& s : summaries) arr.push_back(to_json(s));
    const fs::path p = tmp_ / name;
    std::ofstream(p) << arr.dump(2);
    return p;
  }
};

TEST_F(CliSummariesTest, ReportWritesPlotAndTable) {
  const fs::path s = write_summaries(testing::reference_summaries("AlexNet"), "alex.json");
  const RunOutcome r = run("report --summaries " + q(s) + " --reference 'AlexNet(clean)' --out-plot " +
                           q(tmp_ / "p.svg") + " --out-table " + q(tmp_ / "t.md"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(tmp_ / "t.md").find("| AlexNet(clean) | 2.28 | 85.25 | 92.08 | 83.18 | 92.08 |"), std::string::npos);
  const std::string svg = slurp(tmp_ / "p.svg");
  EXPECT_NE(svg.find("data-label=\"AlexNet(RL30)\" data-group=\"II\""), std::string::npos);
  // Idempotent.
  ASSERT_EQ(run("report --summaries " + q(s) + " --reference 'AlexNet(clean)' --out-plot " + q(tmp_ / "p2.svg")).code, 0);
  EXPECT_EQ(slurp(tmp_ / "p2.svg"), svg);
}

TEST_F(CliSummariesTest, ReportUsesAnalysisReference) {
  const BenchmarkManifest m = make_corpus();
  const auto results = write_alexnet_results(m);
  ASSERT_EQ(run("analyze --manifest " + q(tmp_ / "corpus" / "manifest.json") + " --results " + join(results) +
                "--reference 'AlexNet(clean)' --out " + q(tmp_ / "a.json")).code, 0);
  const RunOutcome r = run("report --summaries " + q(tmp_ / "a.json") + " --out-plot " + q(tmp_ / "p.svg") +
                           " --out-table " + q(tmp_ / "t.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(tmp_ / "t.csv").find("AlexNet(SP0.1RL30),1.92,88.39,89.96,85.30,91.60"), std::string::npos);
}

TEST_F(CliSummariesTest, ReportOnEmptySummaries) {
  const fs::path s = write_summaries({}, "empty.json");
  const RunOutcome r = run("report --summaries " + q(s) + " --reference 'X(clean)' --out-plot " + q(tmp_ / "p.svg") +
                           " --out-table " + q(tmp_ / "t.csv"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(slurp(tmp_ / "t.csv"), "classifier(training set),CV %,mean Accu %,Accu(clean) %,min Accu %,max Accu %\n");
  EXPECT_FALSE(fs::exists(tmp_ / "p.svg"));
}

TEST_F(CliSummariesTest, CorrelateReferenceTable) {
  const fs::path s = write_summaries(testing::reference_summaries(), "t3.json");
  const RunOutcome r = run("correlate --summaries " + q(s));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "n=27\n"
            "CV & mean Accu: spearman=0.180 pearson=0.295\n"
            "CV & Accu(clean): spearman=0.383 pearson=0.440\n"
            "mean Accu & Accu(clean): spearman=0.821 pearson=0.889\n");
}

TEST_F(CliSummariesTest, CorrelateNeedsTwoSummaries) {
  const fs::path s = write_summaries({testing::to_summary(testing::kReferenceRuns[0])}, "one.json");
  EXPECT_EQ(run("correlate --summaries " + q(s)).code, 2);
}

}  // namespace
}  // namespace mcvbench
