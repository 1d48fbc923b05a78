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

#ifndef MCVBENCH_CORPUS_BUILDER_HPP
#define MCVBENCH_CORPUS_BUILDER_HPP

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mcvbench/condition_grid.hpp"
#include "mcvbench/errors.hpp"
#include "mcvbench/manifest.hpp"
#include "mcvbench/perturb.hpp"
#include "mcvbench/png_io.hpp"
#include "mcvbench/random_stream.hpp"
#include "mcvbench/sha256.hpp"

namespace mcvbench {

struct GenerateOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// The perturbed version of source image `image_index` under `condition`.
inline Image render_condition(const Image& source, const Condition& condition,
                              std::uint64_t master_seed, std::uint64_t image_index) {
  RandomStream stream = derive_stream(master_seed, condition.ordinal, image_index);
  return apply_sequence(source, condition.specs, stream);
}

/// PNG files directly inside `dir`, sorted by filename (byte order).
inline std::vector<std::filesystem::path> list_source_images(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("source directory not found: " + dir.string());
  std::vector<fs::path> out;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  if (out.empty()) throw InputError("no PNG images in " + dir.string());
  return out;
}

namespace detail {

// Runs task(i) for i in [0, count) on `workers` threads; rethrows the first failure.
template <typename Task>
void parallel_for(std::size_t count, unsigned workers, Task task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Writes every condition applied to every source image under `out_dir` and
/// returns the manifest (also saved as out_dir/manifest.json). Output bytes
/// depend only on the source bytes, the grid and the seed.
inline BenchmarkManifest generate_corpus(const std::filesystem::path& source_dir,
                                         const std::filesystem::path& out_dir, const GridConfig& config,
                                         std::uint64_t master_seed, GenerateOptions options = {}) {
  namespace fs = std::filesystem;
  const std::vector<Condition> conditions = enumerate_conditions(config);
  const std::vector<fs::path> paths = list_source_images(source_dir);

  BenchmarkManifest manifest;
  manifest.master_seed = master_seed;
  manifest.grid_config = config;

  std::vector<Image> sources;
  sources.reserve(paths.size());
  for (const fs::path& p : paths) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(p);
    Image img = decode_png(bytes, p.string());
    if (!sources.empty() && (img.width() != sources.front().width() ||
                             img.height() != sources.front().height())) {
      throw InputError(p.string() + " is " + std::to_string(img.width()) + "x" +
                       std::to_string(img.height()) + ", expected " +
                       std::to_string(sources.front().width()) + "x" +
                       std::to_string(sources.front().height()));
    }
    manifest.corpus.sources.push_back({p.filename().string(), sha256_hex(bytes)});
    sources.push_back(std::move(img));
  }
  manifest.corpus.image_count = sources.size();
  manifest.corpus.width = sources.front().width();
  manifest.corpus.height = sources.front().height();

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  for (const Condition& c : conditions) {
    fs::create_directories(out_dir / c.directory(), ec);
    if (ec) throw IoError("cannot create " + (out_dir / c.directory()).string() + ": " + ec.message());
  }

  manifest.conditions.resize(conditions.size());
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    manifest.conditions[k].condition = conditions[k];
    manifest.conditions[k].files.resize(sources.size());
  }

  const std::size_t n_images = sources.size();
  detail::parallel_for(conditions.size() * n_images, options.workers, [&](std::size_t task) {
    const std::size_t k = task / n_images;
    const std::size_t i = task % n_images;
    const Condition& c = conditions[k];
    const std::vector<std::uint8_t> png = encode_png(render_condition(sources[i], c, master_seed, i));
    const std::string name = manifest.corpus.sources[i].name;
    write_file_bytes(out_dir / c.directory() / name, png);
    manifest.conditions[k].files[i] = {name, sha256_hex(png)};
  });

  manifest.digest = compute_manifest_digest(manifest);
  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

/// Re-renders every output from `source_dir` and reports files whose
/// recorded hash differs from the regenerated bytes (or whose source changed).
inline std::vector<Violation> verify_regeneration(const BenchmarkManifest& m,
                                                  const std::filesystem::path& source_dir) {
  namespace fs = std::filesystem;
  std::vector<Violation> out;
  std::vector<Image> sources;
  for (const FileEntry& src : m.corpus.sources) {
    const fs::path p = source_dir / src.name;
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
      out.push_back({p.string(), "source missing"});
      return out;
    }
    const std::vector<std::uint8_t> bytes = read_file_bytes(p);
    if (sha256_hex(bytes) != src.sha256) out.push_back({p.string(), "source hash mismatch"});
    sources.push_back(decode_png(bytes, p.string()));
  }
  for (const ConditionEntry& e : m.conditions) {
    for (std::size_t i = 0; i < e.files.size() && i < sources.size(); ++i) {
      const std::string regenerated =
          sha256_hex(encode_png(render_condition(sources[i], e.condition, m.master_seed, i)));
      if (regenerated != e.files[i].sha256) {
        out.push_back({(fs::path(e.condition.directory()) / e.files[i].name).generic_string(),
                       "regeneration digest mismatch"});
      }
    }
  }
  return out;
}

/// Hash over every regular file under `root`: sorted relative paths and contents.
inline std::string directory_hash(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, fs::path>> files;
  for (const fs::directory_entry& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file())
      files.emplace_back(fs::relative(entry.path(), root).generic_string(), entry.path());
  }
  std::sort(files.begin(), files.end());
  Sha256 h;
  for (const auto& [rel, full] : files) {
    h.update(rel).update(std::string_view("\0", 1));
    h.update(sha256_hex(read_file_bytes(full))).update(std::string_view("\n", 1));
  }
  return h.hex();
}

}  // namespace mcvbench

#endif  // MCVBENCH_CORPUS_BUILDER_HPP
