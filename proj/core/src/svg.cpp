// Copyright 2026 The singlet authors
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

#include "singlet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace singlet {

namespace {

constexpr double kWidth = 820.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0, kRight = 150.0, kTop = 40.0, kBottom = 55.0;

const char* kPalette[] = {"#2e7d32", "#c62828", "#1565c0", "#6a1b9a",
                          "#ef6c00", "#00838f", "#4e342e", "#9e9d24"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) xmax = xmin + 1.0;
  if (!(ymin < ymax)) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) {
    return kTop + (ymax - y) / (ymax - ymin) * plot_h;
  };

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
      << "' height='" << kHeight << "' viewBox='0 0 " << kWidth << " "
      << kHeight << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
      << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";

  // Frame and ticks.
  out << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << plot_w
      << "' height='" << plot_h << "' fill='none' stroke='black'/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    out << "<line x1='" << px(fx) << "' y1='" << kTop + plot_h << "' x2='"
        << px(fx) << "' y2='" << kTop + plot_h + 5 << "' stroke='black'/>\n";
    out << "<text x='" << px(fx) << "' y='" << kTop + plot_h + 20
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << fmt(fx) << "</text>\n";
    out << "<line x1='" << kLeft - 5 << "' y1='" << py(fy) << "' x2='" << kLeft
        << "' y2='" << py(fy) << "' stroke='black'/>\n";
    out << "<text x='" << kLeft - 8 << "' y='" << py(fy) + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
        << fmt(fy) << "</text>\n";
  }
  out << "<text x='" << kLeft + plot_w / 2 << "' y='" << kHeight - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
      << xlabel << "</text>\n";
  out << "<text x='18' y='" << kTop + plot_h / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 18 " << kTop + plot_h / 2 << ")'>" << ylabel
      << "</text>\n";

  int color = 0;
  double legend_y = kTop + 10;
  for (const auto& s : series) {
    const char* stroke = kPalette[color % 8];
    out << "<polyline fill='none' stroke='" << stroke
        << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
    }
    out << "'/>\n";
    if (!s.label.empty()) {
      out << "<line x1='" << kLeft + plot_w + 12 << "' y1='" << legend_y
          << "' x2='" << kLeft + plot_w + 34 << "' y2='" << legend_y
          << "' stroke='" << stroke << "' stroke-width='2'/>\n";
      out << "<text x='" << kLeft + plot_w + 40 << "' y='" << legend_y + 4
          << "' font-family='sans-serif' font-size='12'>" << s.label
          << "</text>\n";
      legend_y += 18;
    }
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace singlet
