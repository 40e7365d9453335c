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

// Minimal SVG 1.1 emitter: line plots, CDF steps and heatmaps.

#pragma once

#include <string>
#include <vector>

namespace nfthin::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool step = false;  // right-continuous step function (CDF)
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  double width = 640;
  double height = 420;
};

std::string line_plot(const std::vector<Series>& series, const PlotOptions& opts);

// values(row, col) with rows along y and columns along x, colored between lo and hi.
std::string heatmap(const std::vector<std::vector<double>>& values, const std::vector<double>& x,
                    const std::vector<double>& y, double lo, double hi, const PlotOptions& opts);

}  // namespace nfthin::svg
