// SPDX-License-Identifier: Apache-2.0
//
// nf-thin: thinned sparse arrays for near-field multi-user MIMO
// Copyright (C) 2026 The nf-thin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nfthin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nfthin::svg {

namespace {

constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 140;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 55;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                                "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  PlotOptions opts;

  double px(double x) const {
    const double w = opts.width - kMarginLeft - kMarginRight;
    const double t = opts.log_x ? (std::log10(x) - std::log10(x0)) / (std::log10(x1) - std::log10(x0))
                                : (x - x0) / (x1 - x0);
    return kMarginLeft + t * w;
  }
  double py(double y) const {
    const double h = opts.height - kMarginTop - kMarginBottom;
    return kMarginTop + (1.0 - (y - y0) / (y1 - y0)) * h;
  }
};

void header(std::ostringstream& os, const PlotOptions& o) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(o.width) << "\" height=\""
     << num(o.height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty())
    os << "<text x=\"" << num(o.width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(o.title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f) {
  const auto& o = f.opts;
  const double left = kMarginLeft, right = o.width - kMarginRight;
  const double top = kMarginTop, bottom = o.height - kMarginBottom;
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left) << "\" height=\""
     << num(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    const double xv = o.log_x ? std::pow(10.0, std::log10(f.x0) + t * (std::log10(f.x1) - std::log10(f.x0)))
                              : f.x0 + t * (f.x1 - f.x0);
    const double yv = f.y0 + t * (f.y1 - f.y0);
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(bottom + 16) << "\" text-anchor=\"middle\">"
       << tick_label(xv) << "</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">"
       << tick_label(yv) << "</text>\n";
  }
  os << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << num(o.height - 12) << "\" text-anchor=\"middle\">"
     << escape(o.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << num((top + bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(o.y_label) << "</text>\n";
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const PlotOptions& opts) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: series x/y size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (opts.log_x && !(s.x[i] > 0)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const Frame f{x0, x1, y0, y1, opts};

  std::ostringstream os;
  header(os, opts);
  axes(os, f);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (opts.log_x && !(s.x[i] > 0))) continue;
      if (s.step && i > 0) os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i - 1])) << ' ';
      os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = kMarginTop + 14 + 18.0 * static_cast<double>(k);
    const double lx = opts.width - kMarginRight + 10;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20) << "\" y2=\""
       << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const std::vector<std::vector<double>>& values, const std::vector<double>& x,
                    const std::vector<double>& y, double lo, double hi, const PlotOptions& opts) {
  if (values.size() != y.size()) throw std::invalid_argument("svg heatmap: row count mismatch");
  if (x.size() < 2 || y.size() < 2) throw std::invalid_argument("svg heatmap: need a 2x2 grid at least");
  PlotOptions o = opts;
  o.log_x = false;
  const Frame f{x.front(), x.back(), 0, static_cast<double>(y.size() - 1), o};
  std::ostringstream os;
  header(os, o);
  const double cell_w = (o.width - kMarginLeft - kMarginRight) / static_cast<double>(x.size() - 1);
  const double cell_h = (o.height - kMarginTop - kMarginBottom) / static_cast<double>(y.size() - 1);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (values[i].size() != x.size()) throw std::invalid_argument("svg heatmap: column count mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t = std::clamp((values[i][j] - lo) / (hi - lo), 0.0, 1.0);
      const int r = static_cast<int>(255 * std::clamp(1.5 * t - 0.2, 0.0, 1.0));
      const int g = static_cast<int>(255 * std::clamp(1.5 - std::abs(2 * t - 1) * 1.5, 0.0, 1.0) * 0.9);
      const int b = static_cast<int>(255 * std::clamp(1.2 - 1.5 * t, 0.0, 1.0));
      os << "<rect x=\"" << num(f.px(x[j]) - cell_w / 2) << "\" y=\"" << num(f.py(static_cast<double>(i)) - cell_h / 2)
         << "\" width=\"" << num(cell_w + 0.3) << "\" height=\"" << num(cell_h + 0.3) << "\" fill=\"rgb(" << r << ','
         << g << ',' << b << ")\"/>\n";
    }
  }
  // y ticks show the actual axis values (rows may be log spaced)
  const double left = kMarginLeft, bottom = o.height - kMarginBottom;
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(kMarginTop) << "\" width=\""
     << num(o.width - kMarginLeft - kMarginRight) << "\" height=\"" << num(bottom - kMarginTop)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const std::size_t row = (y.size() - 1) * static_cast<std::size_t>(i) / 4;
    const std::size_t col = (x.size() - 1) * static_cast<std::size_t>(i) / 4;
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(f.py(static_cast<double>(row)) + 4)
       << "\" text-anchor=\"end\">" << tick_label(y[row]) << "</text>\n";
    os << "<text x=\"" << num(f.px(x[col])) << "\" y=\"" << num(bottom + 16) << "\" text-anchor=\"middle\">"
       << tick_label(x[col]) << "</text>\n";
  }
  os << "<text x=\"" << num((left + o.width - kMarginRight) / 2) << "\" y=\"" << num(o.height - 12)
     << "\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << num((kMarginTop + bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(o.y_label) << "</text>\n";
  os << "<text x=\"" << num(o.width - kMarginRight + 10) << "\" y=\"" << num(kMarginTop + 14) << "\">"
     << tick_label(hi) << " dB</text>\n";
  os << "<text x=\"" << num(o.width - kMarginRight + 10) << "\" y=\"" << num(bottom) << "\">" << tick_label(lo)
     << " dB</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace nfthin::svg
