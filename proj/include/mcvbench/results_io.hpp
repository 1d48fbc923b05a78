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

#ifndef MCVBENCH_RESULTS_IO_HPP
#define MCVBENCH_RESULTS_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcvbench/errors.hpp"
#include "mcvbench/metrics.hpp"

namespace mcvbench {

inline constexpr std::string_view kResultsHeader = "condition_ordinal,canonical_label,correct,total,accuracy";

/// A results CSV together with its metadata sidecar.
struct ResultsFile {
  RunResults results;
  std::string manifest_digest;
};

/// `run.csv` -> `run.meta.json`.
inline std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

/// Splits one RFC-4180 record (no embedded newlines).
inline std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw InputError("unterminated quote in CSV record");
  return fields;
}

inline std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

namespace detail {

template <typename T>
T parse_number(std::string_view text, std::string_view what, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("line " + std::to_string(line) + ": bad " + std::string(what) + " '" +
                     std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline std::vector<ConditionResult> parse_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("results CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw InputError("unexpected results header '" + line + "'");
  std::vector<ConditionResult> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_record(line);
    if (f.size() != 5) throw InputError("line " + std::to_string(lineno) + ": expected 5 fields");
    ConditionResult r;
    r.ordinal = detail::parse_number<std::uint64_t>(f[0], "ordinal", lineno);
    r.label = f[1];
    r.correct = detail::parse_number<std::uint64_t>(f[2], "correct", lineno);
    r.total = detail::parse_number<std::uint64_t>(f[3], "total", lineno);
    r.accuracy = detail::parse_number<double>(f[4], "accuracy", lineno);
    if (r.total == 0 || r.correct > r.total)
      throw InputError("line " + std::to_string(lineno) + ": need 0 <= correct <= total, total > 0");
    const double expected = static_cast<double>(r.correct) / static_cast<double>(r.total);
    if (std::abs(expected - r.accuracy) > 5e-7)
      throw InputError("line " + std::to_string(lineno) + ": accuracy disagrees with correct/total");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline ResultsFile read_results(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw InputError("cannot open results " + csv_path.string());
  ResultsFile file;
  try {
    file.results.rows = parse_results_csv(in);
  } catch (const InputError& e) {
    throw InputError(csv_path.string() + ": " + e.what());
  }
  const std::filesystem::path meta = sidecar_path(csv_path);
  std::ifstream meta_in(meta);
  if (!meta_in) throw InputError("missing sidecar " + meta.string());
  try {
    const nlohmann::json j = nlohmann::json::parse(meta_in);
    file.results.classifier_name = j.at("classifier_name").get<std::string>();
    file.results.training_label = j.at("training_label").get<std::string>();
    file.manifest_digest = j.at("manifest_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(meta.string() + ": " + e.what());
  }
  return file;
}

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

inline void write_results(const std::filesystem::path& csv_path, const RunResults& results,
                          std::string_view manifest_digest) {
  std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + csv_path.string());
  out << kResultsHeader << "\n";
  for (const ConditionResult& r : results.rows) {
    out << r.ordinal << "," << csv_escape(r.label) << "," << r.correct << "," << r.total << ","
        << format_fixed(r.accuracy, 8) << "\n";
  }
  std::ofstream meta(sidecar_path(csv_path), std::ios::binary | std::ios::trunc);
  if (!meta) throw IoError("cannot write " + sidecar_path(csv_path).string());
  meta << nlohmann::json{{"classifier_name", results.classifier_name},
                         {"training_label", results.training_label},
                         {"manifest_digest", manifest_digest}}
              .dump(2)
       << "\n";
}

// ---------------------------------------------------------------------------
// Summary documents
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const RunSummary& s) {
  nlohmann::json j{{"classifier_name", s.classifier_name},
                   {"training_label", s.training_label},
                   {"mean_accuracy", s.mean_accuracy},
                   {"stddev", s.stddev},
                   {"cv", s.cv},
                   {"min_accuracy", s.min_accuracy},
                   {"max_accuracy", s.max_accuracy}};
  j["accu_clean"] = s.accu_clean ? nlohmann::json(*s.accu_clean) : nlohmann::json(nullptr);
  return j;
}

inline RunSummary summary_from_json(const nlohmann::json& j) {
  RunSummary s;
  s.classifier_name = j.at("classifier_name").get<std::string>();
  s.training_label = j.at("training_label").get<std::string>();
  s.mean_accuracy = j.at("mean_accuracy").get<double>();
  s.cv = j.at("cv").get<double>();
  s.stddev = j.contains("stddev") ? j.at("stddev").get<double>() : s.cv * s.mean_accuracy / 100.0;
  s.min_accuracy = j.at("min_accuracy").get<double>();
  s.max_accuracy = j.at("max_accuracy").get<double>();
  if (j.contains("accu_clean") && !j.at("accu_clean").is_null()) s.accu_clean = j.at("accu_clean").get<double>();
  return s;
}

/// Output of the analysis step: summaries, quadrant groups and family means.
struct AnalysisReport {
  std::vector<RunSummary> summaries;
  std::optional<std::string> reference;
  std::vector<std::pair<std::string, QuadrantGroup>> quadrants;
  std::map<Family, FamilyStats> families;
};

inline nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["summaries"] = nlohmann::json::array();
  for (const RunSummary& s : r.summaries) j["summaries"].push_back(to_json(s));
  j["reference"] = r.reference ? nlohmann::json(*r.reference) : nlohmann::json(nullptr);
  j["quadrants"] = nlohmann::json::array();
  for (const auto& [name, group] : r.quadrants)
    j["quadrants"].push_back({{"run", name}, {"group", std::string(to_string(group))}});
  j["families"] = nlohmann::json::object();
  for (const auto& [family, f] : r.families) {
    j["families"][std::string(to_string(family))] = {{"count", f.count},
                                                     {"cv", f.cv},
                                                     {"mean_accuracy", f.mean_accuracy},
                                                     {"min_accuracy", f.min_accuracy},
                                                     {"max_accuracy", f.max_accuracy}};
  }
  return j;
}

/// Reads either a bare JSON array of summaries or an analysis document.
inline AnalysisReport read_summaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open summaries " + path.string());
  AnalysisReport report;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    const nlohmann::json& list = j.is_array() ? j : j.at("summaries");
    for (const nlohmann::json& item : list) report.summaries.push_back(summary_from_json(item));
    if (j.is_object() && j.contains("reference") && j.at("reference").is_string())
      report.reference = j.at("reference").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return report;
}

}  // namespace mcvbench

#endif  // MCVBENCH_RESULTS_IO_HPP
