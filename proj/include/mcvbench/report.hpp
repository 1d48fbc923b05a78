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

#ifndef MCVBENCH_REPORT_HPP
#define MCVBENCH_REPORT_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mcvbench/errors.hpp"
#include "mcvbench/metrics.hpp"
#include "mcvbench/results_io.hpp"

namespace mcvbench {

/// Rounds half away from zero at `decimals` places. The small bias absorbs
/// binary representation error so 0.125 and 0.12499999999 both round up.
inline double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::abs(value) * scale;
  const double rounded = std::floor(scaled + 0.5 + 1e-9) / scale;
  return std::copysign(rounded, value);
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

enum class TableFormat { Csv, Markdown };

inline constexpr std::string_view kTableColumns[] = {
    "classifier(training set)", "CV %", "mean Accu %", "Accu(clean) %", "min Accu %", "max Accu %"};

/// Table row values, in column order, as rendered (2 decimals, half-up).
inline std::vector<std::string> table_row(const RunSummary& s) {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", round_half_up(v, 2));
    return std::string(buf);
  };
  return {s.display_name(),
          num(s.cv),
          num(s.mean_accuracy),
          s.accu_clean ? num(*s.accu_clean) : std::string(),
          num(s.min_accuracy),
          num(s.max_accuracy)};
}

namespace detail {

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

inline bool table_order(const RunSummary& a, const RunSummary& b) {
  return std::tuple(lowercase(a.classifier_name), lowercase(a.training_label), a.classifier_name,
                    a.training_label) < std::tuple(lowercase(b.classifier_name),
                                                   lowercase(b.training_label), b.classifier_name,
                                                   b.training_label);
}

}  // namespace detail

/// Renders summaries sorted case-insensitively by (classifier, training label).
inline std::string render_table(std::span<const RunSummary> summaries, TableFormat format) {
  std::vector<RunSummary> rows(summaries.begin(), summaries.end());
  std::stable_sort(rows.begin(), rows.end(), detail::table_order);

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (format == TableFormat::Csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
      out << "\n";
    } else {
      out << "|";
      for (const std::string& c : cells) out << " " << c << " |";
      out << "\n";
    }
  };
  emit(std::vector<std::string>(std::begin(kTableColumns), std::end(kTableColumns)));
  if (format == TableFormat::Markdown) out << "|---|---:|---:|---:|---:|---:|\n";
  for (const RunSummary& s : rows) emit(table_row(s));
  return out.str();
}

// ---------------------------------------------------------------------------
// mCV plot
// ---------------------------------------------------------------------------

struct McvPoint {
  std::string label;
  double mean_accuracy = 0.0;
  double cv = 0.0;
  double min_accuracy = 0.0;
  double max_accuracy = 0.0;
  bool is_reference = false;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct McvPlotSpec {
  std::vector<McvPoint> points;
  std::optional<AxisRange> x_range;  // CV %
  std::optional<AxisRange> y_range;  // mean accuracy %
  bool whiskers = true;
  std::string title;
};

/// Builds a plot spec from summaries; `reference` is a display name such as "AlexNet(clean)".
inline McvPlotSpec make_plot_spec(std::span<const RunSummary> summaries, std::string_view reference) {
  McvPlotSpec spec;
  bool found = false;
  for (const RunSummary& s : summaries) {
    const bool is_ref = s.display_name() == reference;
    found = found || is_ref;
    spec.points.push_back({s.display_name(), s.mean_accuracy, s.cv, s.min_accuracy, s.max_accuracy, is_ref});
  }
  if (!found) throw InputError("reference '" + std::string(reference) + "' is not among the summaries");
  return spec;
}

/// Fixed canvas geometry; exposed so tests can invert the coordinate mapping.
struct PlotFrame {
  static constexpr double kWidth = 800.0;
  static constexpr double kHeight = 600.0;
  static constexpr double kLeft = 80.0;
  static constexpr double kRight = 770.0;
  static constexpr double kTop = 50.0;
  static constexpr double kBottom = 530.0;

  AxisRange x;
  AxisRange y;

  double px(double cv) const { return kLeft + (cv - x.lo) / (x.hi - x.lo) * (kRight - kLeft); }
  double py(double ma) const { return kBottom - (ma - y.lo) / (y.hi - y.lo) * (kBottom - kTop); }
};

namespace detail {

inline std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  return s == "-0.0000" ? "0.0000" : s;
}

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline AxisRange padded(double lo, double hi) {
  const double span = hi - lo;
  const double pad = span > 0.0 ? 0.1 * span : 1.0;
  return {lo - pad, hi + pad};
}

}  // namespace detail

inline PlotFrame plot_frame(const McvPlotSpec& spec) {
  const auto ref_count = std::count_if(spec.points.begin(), spec.points.end(),
                                       [](const McvPoint& p) { return p.is_reference; });
  if (ref_count != 1) throw InputError("mCV plot needs exactly one reference point, got " + std::to_string(ref_count));
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const McvPoint& p : spec.points) {
    for (double v : {p.mean_accuracy, p.cv, p.min_accuracy, p.max_accuracy}) {
      if (!std::isfinite(v)) throw InputError("non-finite value for point " + p.label);
    }
    xlo = std::min(xlo, p.cv);
    xhi = std::max(xhi, p.cv);
    ylo = std::min(ylo, spec.whiskers ? std::min(p.min_accuracy, p.mean_accuracy) : p.mean_accuracy);
    yhi = std::max(yhi, spec.whiskers ? std::max(p.max_accuracy, p.mean_accuracy) : p.mean_accuracy);
  }
  PlotFrame frame{spec.x_range.value_or(detail::padded(xlo, xhi)),
                  spec.y_range.value_or(detail::padded(ylo, yhi))};
  if (!(frame.x.hi - frame.x.lo > 0.0) || !(frame.y.hi - frame.y.lo > 0.0))
    throw RangeError("mCV plot axis range must be positive");
  return frame;
}

/// Deterministic SVG 1.1 mCV plot: CV on x, mean accuracy on y (upwards),
/// split into Groups I-IV by the reference point's lines.
inline std::string render_mcv_svg(const McvPlotSpec& spec) {
  using detail::fmt4;
  using detail::xml_escape;
  const PlotFrame f = plot_frame(spec);
  const McvPoint& ref = *std::find_if(spec.points.begin(), spec.points.end(),
                                      [](const McvPoint& p) { return p.is_reference; });

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt4(PlotFrame::kWidth)
      << "\" height=\"" << fmt4(PlotFrame::kHeight) << "\" viewBox=\"0 0 " << fmt4(PlotFrame::kWidth) << " "
      << fmt4(PlotFrame::kHeight) << "\" font-family=\"sans-serif\">\n";
  svg << "<rect x=\"0.0000\" y=\"0.0000\" width=\"" << fmt4(PlotFrame::kWidth) << "\" height=\""
      << fmt4(PlotFrame::kHeight) << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg << "<text class=\"title\" x=\"" << fmt4(PlotFrame::kWidth / 2) << "\" y=\"28.0000\" font-size=\"16\" "
        << "text-anchor=\"middle\">" << xml_escape(spec.title) << "</text>\n";
  }

  // Frame and ticks.
  svg << "<rect class=\"frame\" x=\"" << fmt4(PlotFrame::kLeft) << "\" y=\"" << fmt4(PlotFrame::kTop)
      << "\" width=\"" << fmt4(PlotFrame::kRight - PlotFrame::kLeft) << "\" height=\""
      << fmt4(PlotFrame::kBottom - PlotFrame::kTop) << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = f.x.lo + (f.x.hi - f.x.lo) * i / kTicks;
    const double yv = f.y.lo + (f.y.hi - f.y.lo) * i / kTicks;
    svg << "<line class=\"tick\" x1=\"" << fmt4(f.px(xv)) << "\" y1=\"" << fmt4(PlotFrame::kBottom)
        << "\" x2=\"" << fmt4(f.px(xv)) << "\" y2=\"" << fmt4(PlotFrame::kBottom + 5) << "\" stroke=\"black\"/>\n"
        << "<text class=\"tick-label\" x=\"" << fmt4(f.px(xv)) << "\" y=\"" << fmt4(PlotFrame::kBottom + 20)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << detail::fmt2(xv) << "</text>\n";
    svg << "<line class=\"tick\" x1=\"" << fmt4(PlotFrame::kLeft - 5) << "\" y1=\"" << fmt4(f.py(yv))
        << "\" x2=\"" << fmt4(PlotFrame::kLeft) << "\" y2=\"" << fmt4(f.py(yv)) << "\" stroke=\"black\"/>\n"
        << "<text class=\"tick-label\" x=\"" << fmt4(PlotFrame::kLeft - 8) << "\" y=\"" << fmt4(f.py(yv) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << detail::fmt2(yv) << "</text>\n";
  }
  svg << "<text class=\"axis-label\" x=\"" << fmt4((PlotFrame::kLeft + PlotFrame::kRight) / 2) << "\" y=\""
      << fmt4(PlotFrame::kHeight - 20) << "\" font-size=\"13\" text-anchor=\"middle\">"
      << "Coefficient of variation (%)</text>\n";
  svg << "<text class=\"axis-label\" x=\"20.0000\" y=\"" << fmt4((PlotFrame::kTop + PlotFrame::kBottom) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20.0000 "
      << fmt4((PlotFrame::kTop + PlotFrame::kBottom) / 2) << ")\">Mean accuracy (%)</text>\n";

  // Quadrant split at the reference point.
  const double rx = f.px(ref.cv);
  const double ry = f.py(ref.mean_accuracy);
  svg << "<line class=\"quadrant-line\" data-axis=\"cv\" x1=\"" << fmt4(rx) << "\" y1=\"" << fmt4(PlotFrame::kTop)
      << "\" x2=\"" << fmt4(rx) << "\" y2=\"" << fmt4(PlotFrame::kBottom)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<line class=\"quadrant-line\" data-axis=\"ma\" x1=\"" << fmt4(PlotFrame::kLeft) << "\" y1=\"" << fmt4(ry)
      << "\" x2=\"" << fmt4(PlotFrame::kRight) << "\" y2=\"" << fmt4(ry)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  struct Corner {
    const char* name;
    double x;
    double y;
    const char* anchor;
  };
  const Corner corners[] = {{"I", PlotFrame::kLeft + 8, PlotFrame::kTop + 18, "start"},
                            {"II", PlotFrame::kRight - 8, PlotFrame::kTop + 18, "end"},
                            {"III", PlotFrame::kLeft + 8, PlotFrame::kBottom - 8, "start"},
                            {"IV", PlotFrame::kRight - 8, PlotFrame::kBottom - 8, "end"}};
  for (const Corner& c : corners) {
    svg << "<text class=\"quadrant-label\" x=\"" << fmt4(c.x) << "\" y=\"" << fmt4(c.y)
        << "\" font-size=\"14\" fill=\"gray\" text-anchor=\"" << c.anchor << "\">Group " << c.name << "</text>\n";
  }

  for (const McvPoint& p : spec.points) {
    const QuadrantGroup g = classify_quadrant(p.mean_accuracy, p.cv, ref.mean_accuracy, ref.cv);
    const double x = f.px(p.cv);
    const double y = f.py(p.mean_accuracy);
    svg << "<g class=\"point" << (p.is_reference ? " reference" : "") << "\" data-label=\""
        << xml_escape(p.label) << "\" data-group=\"" << to_string(g) << "\">\n";
    if (spec.whiskers) {
      svg << "  <line class=\"whisker\" x1=\"" << fmt4(x) << "\" y1=\"" << fmt4(f.py(p.max_accuracy))
          << "\" x2=\"" << fmt4(x) << "\" y2=\"" << fmt4(f.py(p.min_accuracy)) << "\" stroke=\"#999999\"/>\n";
    }
    svg << "  <circle cx=\"" << fmt4(x) << "\" cy=\"" << fmt4(y) << "\" r=\""
        << (p.is_reference ? "6.0000" : "4.0000") << "\" fill=\""
        << (p.is_reference ? "#d62728" : "#1f77b4") << "\"/>\n";
    svg << "  <text x=\"" << fmt4(x + 7) << "\" y=\"" << fmt4(y - 7) << "\" font-size=\"11\">"
        << xml_escape(p.label) << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mcvbench

#endif  // MCVBENCH_REPORT_HPP
