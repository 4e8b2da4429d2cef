// Copyright 2026 The npg-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NPG_SVG_H_
#define NPG_SVG_H_

// Minimal self-contained SVG line plots of gap traces on a log10 y-axis.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "npg/errors.h"
#include "npg/format.h"

namespace npg {

inline constexpr double kSvgFloor = 1e-16;

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgOptions {
  std::string title;
  std::string y_label = "gap";
  std::string x_label = "iteration";
  int width = 720;
  int height = 460;
};

namespace svg_internal {

inline const char* Color(std::size_t k) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf"};
  return kPalette[k % 10];
}

inline std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Step from {1, 2, 5} x 10^k giving at most ~6 ticks over `span`.
inline double NiceStep(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

inline std::string TickLabel(double x) {
  if (std::abs(x - std::round(x)) < 1e-9) {
    return std::to_string(static_cast<long long>(std::llround(x)));
  }
  return FormatFixed(x, 2);
}

}  // namespace svg_internal

// Values <= 1e-16 are drawn at 1e-16; NaN points are skipped.
inline std::string RenderSvg(const std::vector<SvgSeries>& series,
                             const SvgOptions& opt) {
  using svg_internal::Escape;
  if (series.empty()) throw ParameterError("no series to plot");
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool any = false;
  for (const SvgSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw ParameterError("series '" + s.label + "' is empty or ragged");
    }
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (std::isnan(s.y[k])) continue;
      const double ly = std::log10(std::max(s.y[k], kSvgFloor));
      if (!any) {
        x_min = x_max = s.x[k];
        y_min = y_max = ly;
        any = true;
      }
      x_min = std::min(x_min, s.x[k]);
      x_max = std::max(x_max, s.x[k]);
      y_min = std::min(y_min, ly);
      y_max = std::max(y_max, ly);
    }
  }
  if (!any) throw ParameterError("all plotted values are NaN");
  y_min = std::floor(y_min);
  y_max = std::ceil(y_max);
  if (y_max <= y_min) y_max = y_min + 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;

  const double left = 80, right = 170, top = 40, bottom = 60;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double ly) {
    return top + (y_max - ly) / (y_max - y_min) * ph;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
    << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' '
    << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    o << "<text x=\"" << FormatFixed(left + pw / 2, 2)
      << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << Escape(opt.title) << "</text>\n";
  }

  // Decade ticks on y, thinned to at most ~10 labels.
  const int decades = static_cast<int>(y_max - y_min);
  const int y_stride = std::max(1, (decades + 9) / 10);
  for (int d = static_cast<int>(y_min); d <= static_cast<int>(y_max);
       d += y_stride) {
    const std::string y = FormatFixed(py(d), 2);
    o << "<line x1=\"" << FormatFixed(left, 2) << "\" y1=\"" << y
      << "\" x2=\"" << FormatFixed(left + pw, 2) << "\" y2=\"" << y
      << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << FormatFixed(left - 6, 2) << "\" y=\"" << y
      << "\" text-anchor=\"end\" dominant-baseline=\"middle\">1e" << d
      << "</text>\n";
  }
  const double step = svg_internal::NiceStep(x_max - x_min);
  for (double t = std::ceil(x_min / step) * step; t <= x_max + 1e-9;
       t += step) {
    const std::string x = FormatFixed(px(t), 2);
    o << "<line x1=\"" << x << "\" y1=\"" << FormatFixed(top, 2)
      << "\" x2=\"" << x << "\" y2=\"" << FormatFixed(top + ph, 2)
      << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << x << "\" y=\"" << FormatFixed(top + ph + 18, 2)
      << "\" text-anchor=\"middle\">" << svg_internal::TickLabel(t)
      << "</text>\n";
  }
  o << "<rect x=\"" << FormatFixed(left, 2) << "\" y=\"" << FormatFixed(top, 2)
    << "\" width=\"" << FormatFixed(pw, 2) << "\" height=\""
    << FormatFixed(ph, 2) << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << FormatFixed(left + pw / 2, 2) << "\" y=\""
    << FormatFixed(opt.height - 16.0, 2) << "\" text-anchor=\"middle\">"
    << Escape(opt.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << FormatFixed(top + ph / 2, 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << FormatFixed(top + ph / 2, 2) << ")\">" << Escape(opt.y_label)
    << " (log10)</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const SvgSeries& s = series[k];
    o << "<polyline fill=\"none\" stroke=\"" << svg_internal::Color(k)
      << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.y[i])) continue;
      o << (first ? "" : " ") << FormatFixed(px(s.x[i]), 2) << ','
        << FormatFixed(py(std::log10(std::max(s.y[i], kSvgFloor))), 2);
      first = false;
    }
    o << "\"/>\n";
    const double ly = top + 14 + 20.0 * static_cast<double>(k);
    o << "<line x1=\"" << FormatFixed(left + pw + 14, 2) << "\" y1=\""
      << FormatFixed(ly, 2) << "\" x2=\"" << FormatFixed(left + pw + 38, 2)
      << "\" y2=\"" << FormatFixed(ly, 2) << "\" stroke=\""
      << svg_internal::Color(k) << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << FormatFixed(left + pw + 44, 2) << "\" y=\""
      << FormatFixed(ly, 2) << "\" dominant-baseline=\"middle\">"
      << Escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace npg

#endif  // NPG_SVG_H_
