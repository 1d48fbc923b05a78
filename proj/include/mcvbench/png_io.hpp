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

#ifndef MCVBENCH_PNG_IO_HPP
#define MCVBENCH_PNG_IO_HPP

#include <png.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mcvbench/errors.hpp"
#include "mcvbench/image.hpp"

namespace mcvbench {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

/// Decodes any PNG into 8-bit RGB. Gray is expanded; alpha is composited onto black.
inline Image decode_png(std::span<const std::uint8_t> bytes, const std::string& name = "<memory>") {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    const std::string why = png.message;
    png_image_free(&png);
    throw InputError("cannot decode " + name + ": " + why);
  }
  png.format = PNG_FORMAT_RGB;
  if (png.width == 0 || png.height == 0 || png.width > 1u << 15 || png.height > 1u << 15) {
    png_image_free(&png);
    throw InputError("unsupported dimensions in " + name);
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(png), 0);
  if (!png_image_finish_read(&png, nullptr, data.data(), 0, nullptr)) {
    const std::string why = png.message;
    png_image_free(&png);
    throw InputError("cannot decode " + name + ": " + why);
  }
  return Image(static_cast<int>(png.width), static_cast<int>(png.height), std::move(data));
}

inline Image read_png(const std::filesystem::path& path) {
  return decode_png(read_file_bytes(path), path.string());
}

/// Lossless RGB PNG. Output bytes depend only on the pixels (no time chunks).
inline std::vector<std::uint8_t> encode_png(const Image& img) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.width());
  png.height = static_cast<png_uint_32>(img.height());
  png.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, img.data().data(), 0, nullptr)) {
    throw IoError(std::string("PNG sizing failed: ") + png.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, img.data().data(), 0, nullptr)) {
    throw IoError(std::string("PNG encoding failed: ") + png.message);
  }
  out.resize(size);
  return out;
}

inline void write_png(const std::filesystem::path& path, const Image& img) {
  write_file_bytes(path, encode_png(img));
}

}  // namespace mcvbench

#endif  // MCVBENCH_PNG_IO_HPP
