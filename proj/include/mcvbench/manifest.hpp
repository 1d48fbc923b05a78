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

#ifndef MCVBENCH_MANIFEST_HPP
#define MCVBENCH_MANIFEST_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcvbench/condition_grid.hpp"
#include "mcvbench/errors.hpp"
#include "mcvbench/sha256.hpp"

namespace mcvbench {

inline constexpr int kManifestSchemaVersion = 1;

struct FileEntry {
  std::string name;
  std::string sha256;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

struct ConditionEntry {
  Condition condition;
  std::vector<FileEntry> files;

  friend bool operator==(const ConditionEntry&, const ConditionEntry&) = default;
};

struct CorpusInfo {
  std::uint64_t image_count = 0;
  int width = 0;
  int height = 0;
  std::vector<FileEntry> sources;  // sorted by name; index = stream image index

  friend bool operator==(const CorpusInfo&, const CorpusInfo&) = default;
};

/// Persisted description of a generated corpus. `digest` is the SHA-256 of
/// the canonical JSON of every other field, so any edit is detectable.
struct BenchmarkManifest {
  int schema_version = kManifestSchemaVersion;
  std::uint64_t master_seed = 0;
  GridConfig grid_config;
  std::vector<ConditionEntry> conditions;
  CorpusInfo corpus;
  std::string digest;

  friend bool operator==(const BenchmarkManifest&, const BenchmarkManifest&) = default;
};

struct Violation {
  std::string path;
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

using nlohmann::json;

inline json files_to_json(const std::vector<FileEntry>& files) {
  json out = json::array();
  for (const FileEntry& f : files) out.push_back({{"name", f.name}, {"sha256", f.sha256}});
  return out;
}

inline std::vector<FileEntry> files_from_json(const json& j) {
  std::vector<FileEntry> out;
  for (const json& f : j) out.push_back({f.at("name").get<std::string>(), f.at("sha256").get<std::string>()});
  return out;
}

inline json manifest_body(const BenchmarkManifest& m) {
  json conditions = json::array();
  for (const ConditionEntry& e : m.conditions) {
    const Condition& c = e.condition;
    json specs = json::array();
    for (const PerturbationSpec& s : c.specs)
      specs.push_back({{"kind", std::string(to_string(s.kind))}, {"severity", s.severity}});
    conditions.push_back({{"ordinal", c.ordinal},
                          {"grid", std::string(to_string(c.grid))},
                          {"cell", {c.cell.first, c.cell.second}},
                          {"label", c.label},
                          {"directory", c.directory()},
                          {"specs", specs},
                          {"files", files_to_json(e.files)}});
  }
  return {{"schema_version", m.schema_version},
          {"master_seed", m.master_seed},
          {"grid_config",
           {{"sp_levels", m.grid_config.sp_levels},
            {"ga_levels", m.grid_config.ga_levels},
            {"ro_levels", m.grid_config.ro_levels}}},
          {"conditions", conditions},
          {"corpus",
           {{"image_count", m.corpus.image_count},
            {"width", m.corpus.width},
            {"height", m.corpus.height},
            {"sources", files_to_json(m.corpus.sources)}}}};
}

}  // namespace detail

inline std::string compute_manifest_digest(const BenchmarkManifest& m) {
  return sha256_hex(detail::manifest_body(m).dump());
}

inline std::string to_json_text(const BenchmarkManifest& m) {
  nlohmann::json j = detail::manifest_body(m);
  j["manifest_digest"] = m.digest;
  return j.dump(2) + "\n";
}

inline BenchmarkManifest parse_manifest(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed manifest JSON: ") + e.what());
  }
  try {
    BenchmarkManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion) {
      throw InputError("unsupported manifest schema_version " + std::to_string(m.schema_version));
    }
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    const json& g = j.at("grid_config");
    m.grid_config.sp_levels = g.at("sp_levels").get<std::vector<double>>();
    m.grid_config.ga_levels = g.at("ga_levels").get<std::vector<double>>();
    m.grid_config.ro_levels = g.at("ro_levels").get<std::vector<double>>();
    for (const json& cj : j.at("conditions")) {
      ConditionEntry e;
      Condition& c = e.condition;
      c.ordinal = cj.at("ordinal").get<std::uint64_t>();
      c.grid = parse_grid(cj.at("grid").get<std::string>());
      const auto cell = cj.at("cell").get<std::vector<double>>();
      if (cell.size() != 2) throw InputError("condition cell must have two levels");
      c.cell = {cell[0], cell[1]};
      c.label = cj.at("label").get<std::string>();
      for (const json& sj : cj.at("specs"))
        c.specs.push_back({parse_kind(sj.at("kind").get<std::string>()), sj.at("severity").get<double>()});
      e.files = detail::files_from_json(cj.at("files"));
      m.conditions.push_back(std::move(e));
    }
    const json& cp = j.at("corpus");
    m.corpus.image_count = cp.at("image_count").get<std::uint64_t>();
    m.corpus.width = cp.at("width").get<int>();
    m.corpus.height = cp.at("height").get<int>();
    m.corpus.sources = detail::files_from_json(cp.at("sources"));
    m.digest = j.at("manifest_digest").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest schema error: ") + e.what());
  }
}

inline BenchmarkManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

inline void save_manifest(const BenchmarkManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << to_json_text(m);
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::vector<Condition> conditions_of(const BenchmarkManifest& m) {
  std::vector<Condition> out;
  out.reserve(m.conditions.size());
  for (const ConditionEntry& e : m.conditions) out.push_back(e.condition);
  return out;
}

/// Structural checks plus a re-hash of every output file under `root`.
/// An empty result means the corpus is intact.
inline std::vector<Violation> validate_manifest(const BenchmarkManifest& m,
                                                const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<Violation> out;
  if (compute_manifest_digest(m) != m.digest) {
    out.push_back({"manifest.json", "manifest digest mismatch"});
  }
  try {
    if (conditions_of(m) != enumerate_conditions(m.grid_config)) {
      out.push_back({"manifest.json", "condition list does not match grid_config"});
    }
  } catch (const ConfigError& e) {
    out.push_back({"manifest.json", std::string("invalid grid_config: ") + e.what()});
  }
  for (const ConditionEntry& e : m.conditions) {
    for (const FileEntry& f : e.files) {
      const fs::path rel = fs::path(e.condition.directory()) / f.name;
      const fs::path full = root / rel;
      std::error_code ec;
      if (!fs::is_regular_file(full, ec)) {
        out.push_back({rel.generic_string(), "missing"});
        continue;
      }
      std::ifstream in(full, std::ios::binary);
      std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
      if (sha256_hex(bytes) != f.sha256) out.push_back({rel.generic_string(), "content hash mismatch"});
    }
  }
  return out;
}

/// Source digests present in both manifests. A non-empty result means a
/// training corpus and a testing corpus share images.
inline std::vector<std::string> source_overlap(const BenchmarkManifest& a, const BenchmarkManifest& b) {
  std::vector<std::string> lhs, rhs, both;
  for (const FileEntry& f : a.corpus.sources) lhs.push_back(f.sha256);
  for (const FileEntry& f : b.corpus.sources) rhs.push_back(f.sha256);
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(both));
  both.erase(std::unique(both.begin(), both.end()), both.end());
  return both;
}

}  // namespace mcvbench

#endif  // MCVBENCH_MANIFEST_HPP
