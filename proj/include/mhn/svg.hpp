#pragma once

// Minimal self-contained SVG 1.1 line/step/scatter plots. No external assets,
// scripts, or timestamps: output depends only on the input data, so reruns
// are byte-identical.

#include <string>
#include <vector>

namespace mhn {

struct Series {
  enum class Style { line, step, scatter };
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::line;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

std::string render_svg(const PlotSpec& plot);

}  // namespace mhn
