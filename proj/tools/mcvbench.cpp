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

// mcvbench: generate perturbed benchmark corpora, summarise classifier runs
// and render mCV plots.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcvbench/mcvbench.hpp"

namespace fs = std::filesystem;
using namespace mcvbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitValidation = 3;

struct GenerateArgs {
  std::string corpus;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<double> sp_levels;
  std::vector<double> ga_levels;
  std::vector<double> ro_levels;
  unsigned workers = 0;
};

struct AnalyzeArgs {
  std::string manifest;
  std::vector<std::string> results;
  std::string reference;
  std::string out;
};

struct ReportArgs {
  std::string summaries;
  std::string out_plot;
  std::string out_table;
  std::string reference;
  std::string title;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

int cmd_generate(const GenerateArgs& args) {
  std::uint64_t seed = 0;
  if (args.seed) {
    seed = *args.seed;
  } else if (const char* env = std::getenv("MCVBENCH_SEED"); env && *env) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("MCVBENCH_SEED is not an unsigned integer: ") + env);
    }
  } else {
    throw ConfigError("no seed: pass --seed or set MCVBENCH_SEED");
  }

  GridConfig config;
  if (!args.sp_levels.empty()) config.sp_levels = args.sp_levels;
  if (!args.ga_levels.empty()) config.ga_levels = args.ga_levels;
  if (!args.ro_levels.empty()) config.ro_levels = args.ro_levels;

  const BenchmarkManifest m = generate_corpus(args.corpus, args.out, config, seed, {args.workers});
  std::cout << m.conditions.size() << " conditions, " << m.conditions.size() * m.corpus.image_count
            << " images\n"
            << "manifest digest: " << m.digest << "\n";
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args) {
  const BenchmarkManifest manifest = load_manifest(args.manifest);
  const std::vector<Condition> conditions = conditions_of(manifest);

  AnalysisReport report;
  bool invalid = false;
  for (const std::string& path : args.results) {
    const ResultsFile file = read_results(path);
    std::vector<std::string> gaps = coverage_gaps(file.results, conditions);
    if (file.manifest_digest != manifest.digest) {
      gaps.insert(gaps.begin(), "manifest digest " + file.manifest_digest + " does not match " + manifest.digest);
    }
    if (!gaps.empty()) {
      invalid = true;
      std::cerr << path << ": " << gaps.size() << " validation problem(s)\n";
      for (const std::string& g : gaps) std::cerr << "  " << g << "\n";
      continue;
    }
    report.summaries.push_back(summarize_run(file.results, conditions));
  }
  if (invalid) return kExitValidation;

  const RunSummary* reference = nullptr;
  for (const RunSummary& s : report.summaries) {
    if (s.display_name() == args.reference) reference = &s;
  }
  if (!reference) throw InputError("reference '" + args.reference + "' matches no results file");
  report.reference = args.reference;
  for (const RunSummary& s : report.summaries)
    report.quadrants.emplace_back(s.display_name(), classify_quadrant(s, *reference));
  report.families = family_aggregate(report.summaries);

  const std::string text = to_json(report).dump(2) + "\n";
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    write_text(args.out, text);
    for (const auto& [name, group] : report.quadrants) std::cout << name << ": Group " << to_string(group) << "\n";
  }
  return kExitOk;
}

int cmd_report(const ReportArgs& args) {
  const AnalysisReport report = read_summaries(args.summaries);
  if (!args.out_table.empty()) {
    const TableFormat format = fs::path(args.out_table).extension() == ".csv" ? TableFormat::Csv
                                                                            : TableFormat::Markdown;
    write_text(args.out_table, render_table(report.summaries, format));
  }
  if (!args.out_plot.empty()) {
    if (report.summaries.empty()) throw InputError("no summaries to plot");
    const std::string reference = !args.reference.empty() ? args.reference : report.reference.value_or("");
    if (reference.empty()) throw InputError("plot needs a reference run (--reference)");
    McvPlotSpec spec = make_plot_spec(report.summaries, reference);
    spec.title = args.title;
    write_text(args.out_plot, render_mcv_svg(spec));
  }
  return kExitOk;
}

int cmd_correlate(const std::string& summaries_path) {
  const AnalysisReport report = read_summaries(summaries_path);
  if (report.summaries.size() < 2) throw InputError("correlation needs at least two summaries");
  std::vector<double> cv, ma, clean;
  for (const RunSummary& s : report.summaries) {
    if (!s.accu_clean) throw InputError(s.display_name() + " has no Accu(clean)");
    cv.push_back(s.cv);
    ma.push_back(s.mean_accuracy);
    clean.push_back(*s.accu_clean);
  }
  auto line = [](const char* name, const std::vector<double>& x, const std::vector<double>& y) {
    std::cout << name << ": spearman=" << format_fixed(spearman(x, y), 3)
              << " pearson=" << format_fixed(pearson(x, y), 3) << "\n";
  };
  std::cout << "n=" << cv.size() << "\n";
  line("CV & mean Accu", cv, ma);
  line("CV & Accu(clean)", cv, clean);
  line("mean Accu & Accu(clean)", ma, clean);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-factor perturbation benchmark toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a perturbed corpus and manifest");
  generate->add_option("--corpus", gen.corpus, "Directory of source PNG images")->required();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--seed", gen.seed, "Master seed (falls back to MCVBENCH_SEED)");
  generate->add_option("--sp-levels", gen.sp_levels, "Salt & pepper densities")->delimiter(',');
  generate->add_option("--ga-levels", gen.ga_levels, "Gaussian variances")->delimiter(',');
  generate->add_option("--ro-levels", gen.ro_levels, "Rotation degrees")->delimiter(',');
  generate->add_option("--workers", gen.workers, "Worker threads (0 = all cores)");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Summarise results files against a manifest");
  analyze->add_option("--manifest", ana.manifest, "manifest.json of the test corpus")->required();
  analyze->add_option("--results", ana.results, "Results CSV files (sidecar <name>.meta.json)")->required();
  analyze->add_option("--reference", ana.reference, "Reference run, e.g. 'AlexNet(clean)'")->required();
  analyze->add_option("--out", ana.out, "Analysis JSON output (default stdout)");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Render the mCV plot and summary table");
  report->add_option("--summaries", rep.summaries, "Analysis JSON or summary array")->required();
  report->add_option("--out-plot", rep.out_plot, "SVG output");
  report->add_option("--out-table", rep.out_table, "Table output (.md or .csv)");
  report->add_option("--reference", rep.reference, "Reference run (overrides the document's)");
  report->add_option("--title", rep.title, "Plot title");

  std::string corr_summaries;
  auto* correlate = app.add_subcommand("correlate", "Spearman and Pearson correlations across runs");
  correlate->add_option("--summaries", corr_summaries, "Analysis JSON or summary array")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (analyze->parsed()) return cmd_analyze(ana);
    if (report->parsed()) return cmd_report(rep);
    if (correlate->parsed()) return cmd_correlate(corr_summaries);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
