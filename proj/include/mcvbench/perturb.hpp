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

#ifndef MCVBENCH_PERTURB_HPP
#define MCVBENCH_PERTURB_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "mcvbench/errors.hpp"
#include "mcvbench/image.hpp"
#include "mcvbench/random_stream.hpp"

namespace mcvbench {

enum class PerturbationKind { SaltPepper, Gaussian, Rotation };

inline std::string_view to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::SaltPepper: return "SaltPepper";
    case PerturbationKind::Gaussian: return "Gaussian";
    case PerturbationKind::Rotation: return "Rotation";
  }
  return "?";
}

inline PerturbationKind parse_kind(std::string_view name) {
  if (name == "SaltPepper") return PerturbationKind::SaltPepper;
  if (name == "Gaussian") return PerturbationKind::Gaussian;
  if (name == "Rotation") return PerturbationKind::Rotation;
  throw InputError("unknown perturbation kind '" + std::string(name) + "'");
}

/// One atomic corruption. Severity is a density for salt & pepper, a variance on
/// the [0,1] intensity scale for Gaussian noise, and degrees for rotation
/// (negative counterclockwise, positive clockwise).
struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::SaltPepper;
  double severity = 0.0;

  bool is_identity() const noexcept { return severity == 0.0; }

  friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

inline void check_severity(const PerturbationSpec& spec) {
  const double s = spec.severity;
  switch (spec.kind) {
    case PerturbationKind::SaltPepper:
      if (!(s >= 0.0 && s <= 1.0))
        throw RangeError("salt & pepper density must lie in [0,1], got " + std::to_string(s));
      break;
    case PerturbationKind::Gaussian:
      if (!(s >= 0.0) || !std::isfinite(s))
        throw RangeError("Gaussian variance must be finite and >= 0, got " + std::to_string(s));
      break;
    case PerturbationKind::Rotation:
      if (!(s >= -360.0 && s <= 360.0))
        throw RangeError("rotation must lie in [-360,360] degrees, got " + std::to_string(s));
      break;
  }
}

namespace detail {

inline std::uint8_t to_byte(double normalized) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(normalized, 0.0, 1.0) * 255.0));
}

// sin/cos of an angle in degrees, exact at multiples of 90.
inline std::pair<double, double> sin_cos_degrees(double degrees) {
  const double reduced = std::fmod(degrees, 360.0);
  const double quarter = reduced / 90.0;
  if (quarter == std::floor(quarter)) {
    switch ((static_cast<int>(quarter) % 4 + 4) % 4) {
      case 0: return {0.0, 1.0};
      case 1: return {1.0, 0.0};
      case 2: return {0.0, -1.0};
      default: return {-1.0, 0.0};
    }
  }
  const double radians = reduced * std::numbers::pi / 180.0;
  return {std::sin(radians), std::cos(radians)};
}

}  // namespace detail

/// Replaces each channel element independently with probability `density`.
/// Per element one uniform decides replacement (u < density); a replaced
/// element consumes a second uniform for the coin (< 0.5 pepper, else salt).
inline Image salt_pepper(const Image& img, double density, RandomStream& stream) {
  check_severity({PerturbationKind::SaltPepper, density});
  Image out = img;
  if (density == 0.0) return out;
  for (std::uint8_t& v : out.data()) {
    if (stream.uniform() < density) {
      v = stream.uniform() < 0.5 ? 0 : 255;
    }
  }
  return out;
}

/// Basic Box-Muller transform; returns a pair of independent standard normals.
inline std::pair<double, double> box_muller(double u1, double u2) {
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Additive zero-mean Gaussian noise of the given variance on normalized
/// intensities, clamped to [0,1]. Normals are drawn pairwise in traversal
/// order; a trailing unused normal is discarded.
inline Image gaussian_noise(const Image& img, double variance, RandomStream& stream) {
  check_severity({PerturbationKind::Gaussian, variance});
  Image out = img;
  if (variance == 0.0) return out;
  const double scale = std::sqrt(variance);
  std::span<std::uint8_t> px = out.data();
  for (std::size_t i = 0; i < px.size(); i += 2) {
    const double u1 = stream.uniform();
    const double u2 = stream.uniform();
    const auto [z1, z2] = box_muller(u1, u2);
    px[i] = detail::to_byte(px[i] / 255.0 + scale * z1);
    if (i + 1 < px.size()) px[i + 1] = detail::to_byte(px[i + 1] / 255.0 + scale * z2);
  }
  return out;
}

/// Rotates about the raster center and crops to the original frame. Output
/// pixels are bilinearly sampled at the inverse-rotated source position;
/// samples outside the source contribute black.
inline Image rotate(const Image& img, double degrees) {
  check_severity({PerturbationKind::Rotation, degrees});
  if (degrees == 0.0) return img;

  const int w = img.width();
  const int h = img.height();
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const auto [s, c] = detail::sin_cos_degrees(degrees);

  auto texel = [&](int x, int y, int ch) -> double {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return img.at(x, y, ch);
  };

  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      // y grows downward, so this inverse map undoes a clockwise turn on screen.
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      if (sx <= -1.0 || sy <= -1.0 || sx >= w || sy >= h) continue;
      const double fx0 = std::floor(sx);
      const double fy0 = std::floor(sy);
      const int x0 = static_cast<int>(fx0);
      const int y0 = static_cast<int>(fy0);
      const double ax = sx - fx0;
      const double ay = sy - fy0;
      for (int ch = 0; ch < Image::kChannels; ++ch) {
        const double top = (1.0 - ax) * texel(x0, y0, ch) + ax * texel(x0 + 1, y0, ch);
        const double bottom = (1.0 - ax) * texel(x0, y0 + 1, ch) + ax * texel(x0 + 1, y0 + 1, ch);
        const double v = (1.0 - ay) * top + ay * bottom;
        out.at(x, y, ch) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

inline Image apply(const Image& img, const PerturbationSpec& spec, RandomStream& stream) {
  switch (spec.kind) {
    case PerturbationKind::SaltPepper: return salt_pepper(img, spec.severity, stream);
    case PerturbationKind::Gaussian: return gaussian_noise(img, spec.severity, stream);
    case PerturbationKind::Rotation: return rotate(img, spec.severity);
  }
  return img;
}

/// Applies specs left to right, threading one stream through every noise step.
inline Image apply_sequence(const Image& img, std::span<const PerturbationSpec> specs,
                            RandomStream& stream) {
  Image out = img;
  for (const PerturbationSpec& spec : specs) out = apply(out, spec, stream);
  return out;
}

}  // namespace mcvbench

#endif  // MCVBENCH_PERTURB_HPP
