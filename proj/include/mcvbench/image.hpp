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

#ifndef MCVBENCH_IMAGE_HPP
#define MCVBENCH_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcvbench/errors.hpp"

namespace mcvbench {

/// Interleaved 8-bit RGB raster, row-major, channel-minor.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;

  Image(int width, int height, std::uint8_t fill = 0) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(size_for(width, height), fill);
  }

  Image(int width, int height, std::vector<std::uint8_t> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != size_for(width, height)) {
      throw InputError("image data length " + std::to_string(data_.size()) + " does not match " +
                       std::to_string(width) + "x" + std::to_string(height) + "x3");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t& at(int x, int y, int c) noexcept { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const noexcept { return data_[index(x, y, c)]; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  static std::size_t size_for(int w, int h) {
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * kChannels;
  }
  static void check_dims(int w, int h) {
    if (w <= 0 || h <= 0) {
      throw InputError("image dimensions must be positive, got " + std::to_string(w) + "x" +
                       std::to_string(h));
    }
  }
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * kChannels + static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace mcvbench

#endif  // MCVBENCH_IMAGE_HPP
