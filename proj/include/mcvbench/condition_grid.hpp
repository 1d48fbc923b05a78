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

#ifndef MCVBENCH_CONDITION_GRID_HPP
#define MCVBENCH_CONDITION_GRID_HPP

#include <array>
#include <charconv>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "mcvbench/errors.hpp"
#include "mcvbench/perturb.hpp"

namespace mcvbench {

/// Severity levels for the four two-factor grids.
struct GridConfig {
  std::vector<double> sp_levels{0.0, 0.1, 0.15, 0.2};
  std::vector<double> ga_levels{0.0, 0.1, 0.15, 0.2};
  std::vector<double> ro_levels{-60.0, -30.0, 0.0, 30.0, 60.0};

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

enum class GridKind { Clean, SpGa, GaSp, SpRo, RoSp };

inline constexpr std::array<GridKind, 4> kTwoFactorGrids{GridKind::SpGa, GridKind::GaSp,
                                                         GridKind::SpRo, GridKind::RoSp};

inline std::string_view to_string(GridKind grid) {
  switch (grid) {
    case GridKind::Clean: return "CLEAN";
    case GridKind::SpGa: return "SP_GA";
    case GridKind::GaSp: return "GA_SP";
    case GridKind::SpRo: return "SP_RO";
    case GridKind::RoSp: return "RO_SP";
  }
  return "?";
}

inline GridKind parse_grid(std::string_view name) {
  for (GridKind g : {GridKind::Clean, GridKind::SpGa, GridKind::GaSp, GridKind::SpRo,
                     GridKind::RoSp}) {
    if (to_string(g) == name) return g;
  }
  throw InputError("unknown grid '" + std::string(name) + "'");
}

/// Perturbation kinds of a grid in application order.
inline std::pair<PerturbationKind, PerturbationKind> grid_factors(GridKind grid) {
  using K = PerturbationKind;
  switch (grid) {
    case GridKind::SpGa: return {K::SaltPepper, K::Gaussian};
    case GridKind::GaSp: return {K::Gaussian, K::SaltPepper};
    case GridKind::SpRo: return {K::SaltPepper, K::Rotation};
    case GridKind::RoSp: return {K::Rotation, K::SaltPepper};
    case GridKind::Clean: break;
  }
  throw ConfigError("the clean grid has no factors");
}

struct Condition {
  std::uint64_t ordinal = 0;
  GridKind grid = GridKind::Clean;
  std::pair<double, double> cell{0.0, 0.0};
  std::vector<PerturbationSpec> specs;
  std::string label;

  /// Output subdirectory name; unique even when labels repeat across grids.
  std::string directory() const { return label + "#" + std::to_string(ordinal); }

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Shortest decimal form that round-trips ("0.1", "0.15", "30").
inline std::string format_level(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw RangeError("cannot format level");
  return std::string(buf.data(), end);
}

inline std::string spec_token(const PerturbationSpec& spec) {
  switch (spec.kind) {
    case PerturbationKind::SaltPepper: return "SP" + format_level(spec.severity);
    case PerturbationKind::Gaussian: return "GA" + format_level(spec.severity);
    case PerturbationKind::Rotation:
      return spec.severity < 0 ? "RL" + format_level(-spec.severity)
                               : "RR" + format_level(spec.severity);
  }
  return {};
}

/// Non-identity components of a cell in application order.
inline std::vector<PerturbationSpec> effective_specs(GridKind grid, std::pair<double, double> cell) {
  if (grid == GridKind::Clean) return {};
  const auto [first, second] = grid_factors(grid);
  std::vector<PerturbationSpec> specs;
  for (PerturbationSpec spec : {PerturbationSpec{first, cell.first},
                                PerturbationSpec{second, cell.second}}) {
    if (!spec.is_identity()) specs.push_back(spec);
  }
  return specs;
}

inline std::string label_for(std::span<const PerturbationSpec> specs) {
  std::string label;
  for (const PerturbationSpec& spec : specs) {
    if (!spec.is_identity()) label += spec_token(spec);
  }
  return label.empty() ? std::string("clean") : label;
}

inline std::string canonical_label(GridKind grid, std::pair<double, double> cell) {
  const std::vector<PerturbationSpec> specs = effective_specs(grid, cell);
  return label_for(specs);
}

/// Inverse of canonical_label: the effective spec sequence a label denotes.
inline std::vector<PerturbationSpec> parse_label(std::string_view label) {
  if (label == "clean") return {};
  if (label.empty()) throw InputError("empty condition label");
  std::vector<PerturbationSpec> specs;
  std::string_view rest = label;
  while (!rest.empty()) {
    if (rest.size() < 3) throw InputError("malformed condition label '" + std::string(label) + "'");
    const std::string_view tag = rest.substr(0, 2);
    PerturbationSpec spec;
    double sign = 1.0;
    if (tag == "SP") {
      spec.kind = PerturbationKind::SaltPepper;
    } else if (tag == "GA") {
      spec.kind = PerturbationKind::Gaussian;
    } else if (tag == "RL") {
      spec.kind = PerturbationKind::Rotation;
      sign = -1.0;
    } else if (tag == "RR") {
      spec.kind = PerturbationKind::Rotation;
    } else {
      throw InputError("unknown component '" + std::string(tag) + "' in label '" +
                       std::string(label) + "'");
    }
    rest.remove_prefix(2);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value,
                                     std::chars_format::fixed);
    if (ec != std::errc{} || ptr == rest.data() || value <= 0.0) {
      throw InputError("bad severity in label '" + std::string(label) + "'");
    }
    spec.severity = sign * value;
    try {
      check_severity(spec);
    } catch (const RangeError& e) {
      throw InputError("label '" + std::string(label) + "': " + e.what());
    }
    specs.push_back(spec);
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  }
  return specs;
}

inline void validate(const GridConfig& config) {
  auto check = [](const std::vector<double>& levels, std::string_view name,
                  PerturbationKind kind) {
    if (levels.empty()) throw ConfigError(std::string(name) + " must not be empty");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      try {
        check_severity({kind, levels[i]});
      } catch (const RangeError& e) {
        throw ConfigError(std::string(name) + ": " + e.what());
      }
      if (i > 0 && !(levels[i] > levels[i - 1])) {
        throw ConfigError(std::string(name) + " must be strictly increasing");
      }
    }
  };
  check(config.sp_levels, "sp_levels", PerturbationKind::SaltPepper);
  check(config.ga_levels, "ga_levels", PerturbationKind::Gaussian);
  check(config.ro_levels, "ro_levels", PerturbationKind::Rotation);
}

inline const std::vector<double>& levels_for(const GridConfig& config, PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::SaltPepper: return config.sp_levels;
    case PerturbationKind::Gaussian: return config.ga_levels;
    case PerturbationKind::Rotation: break;
  }
  return config.ro_levels;
}

/// All benchmark conditions: clean first (when any grid has an all-identity
/// cell), then SP_GA, GA_SP, SP_RO, RO_SP cells in row-major order with each
/// grid's all-identity cell folded into clean. Ordinals start at 1.
inline std::vector<Condition> enumerate_conditions(const GridConfig& config) {
  validate(config);

  bool any_identity_cell = false;
  for (GridKind grid : kTwoFactorGrids) {
    const auto [first, second] = grid_factors(grid);
    auto has_zero = [](const std::vector<double>& v) {
      for (double x : v) if (x == 0.0) return true;
      return false;
    };
    if (has_zero(levels_for(config, first)) && has_zero(levels_for(config, second)))
      any_identity_cell = true;
  }

  std::vector<Condition> out;
  std::uint64_t ordinal = 1;
  if (any_identity_cell) {
    out.push_back({ordinal++, GridKind::Clean, {0.0, 0.0}, {}, "clean"});
  }
  for (GridKind grid : kTwoFactorGrids) {
    const auto [first, second] = grid_factors(grid);
    for (double a : levels_for(config, first)) {
      for (double b : levels_for(config, second)) {
        if (a == 0.0 && b == 0.0) continue;
        Condition c;
        c.ordinal = ordinal++;
        c.grid = grid;
        c.cell = {a, b};
        c.specs = effective_specs(grid, c.cell);
        c.label = label_for(c.specs);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace mcvbench

#endif  // MCVBENCH_CONDITION_GRID_HPP
