#include "mhn/svg.hpp"

#include "mhn/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mhn {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 836.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 482.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
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

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  bool usable(double v) const {
    return std::isfinite(v) && (!log || v > 0.0);
  }
  // Plot-space coordinate of v in [0, 1].
  double unit(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return (x - a) / (b - a);
  }
};

AxisRange fit_range(const PlotSpec& plot, bool y_axis, bool log) {
  AxisRange range;
  range.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Series& s : plot.series) {
    const std::vector<double>& vals = y_axis ? s.y : s.x;
    for (double v : vals) {
      if (!range.usable(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {  // no drawable data on this axis
    lo = log ? 0.1 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (log) {
    if (lo == hi) {
      lo /= 10.0;
      hi *= 10.0;
    }
    range.lo = std::pow(10.0, std::floor(std::log10(lo)));
    range.hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (range.lo == range.hi) range.hi *= 10.0;
  } else {
    if (lo == hi) {
      const double pad = std::max(1.0, std::abs(lo) * 0.1);
      lo -= pad;
      hi += pad;
    }
    const double pad = 0.05 * (hi - lo);
    range.lo = lo - pad;
    range.hi = hi + pad;
  }
  return range;
}

std::vector<double> axis_ticks(const AxisRange& range) {
  std::vector<double> ticks;
  if (range.log) {
    const int first = static_cast<int>(std::ceil(std::log10(range.lo) - 1e-9));
    const int last = static_cast<int>(std::floor(std::log10(range.hi) + 1e-9));
    for (int e = first; e <= last; ++e) {
      ticks.push_back(std::pow(10.0, e));
    }
    return ticks;
  }
  const double span = range.hi - range.lo;
  const double raw_step = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw_step) {
      step = mag * mult;
      break;
    }
  }
  const double first = std::ceil(range.lo / step) * step;
  for (double t = first; t <= range.hi + step * 1e-9; t += step) {
    // snap near-zero ticks so "-0" never appears
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  const AxisRange xr = fit_range(plot, false, plot.log_x);
  const AxisRange yr = fit_range(plot, true, plot.log_y);
  const auto px = [&](double v) {
    return kLeft + (kRight - kLeft) * xr.unit(v);
  };
  const auto py = [&](double v) {
    return kBottom - (kBottom - kTop) * yr.unit(v);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ";
  svg += "width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" ";
  svg += "viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"24\" " +
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         xml_escape(plot.title) + "</text>\n";

  // gridlines + ticks
  for (double t : axis_ticks(xr)) {
    const double x = px(t);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(x) + "\" y2=\"" + num(kBottom) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           xml_escape(tick_label(t)) + "</text>\n";
  }
  for (double t : axis_ticks(yr)) {
    const double y = py(t);
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kRight) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           xml_escape(tick_label(t)) + "</text>\n";
  }

  // frame + axis labels
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(kRight - kLeft) + "\" height=\"" + num(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" +
         num(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         xml_escape(plot.x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + num((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 " +
         num((kTop + kBottom) / 2) + ")\">" +
         xml_escape(plot.y_label) + "</text>\n";

  // series
  for (size_t si = 0; si < plot.series.size(); ++si) {
    const Series& s = plot.series[si];
    const char* color = kPalette[si % kPaletteSize];
    const size_t n = std::min(s.x.size(), s.y.size());

    if (s.style == Series::Style::scatter) {
      for (size_t i = 0; i < n; ++i) {
        if (!xr.usable(s.x[i]) || !yr.usable(s.y[i])) continue;
        svg += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" +
               num(py(s.y[i])) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
      }
    } else {
      std::string points;
      double prev_y = 0.0;
      bool have_prev = false;
      for (size_t i = 0; i < n; ++i) {
        if (!xr.usable(s.x[i]) || !yr.usable(s.y[i])) {
          have_prev = false;
          continue;
        }
        if (s.style == Series::Style::step && have_prev) {
          points += num(px(s.x[i])) + "," + num(py(prev_y)) + " ";
        }
        points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        prev_y = s.y[i];
        have_prev = true;
      }
      if (!points.empty()) {
        points.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.6\" points=\"" + points + "\"/>\n";
      }
    }
  }

  // legend (top-right corner of the plot area)
  double ly = kTop + 16.0;
  for (size_t si = 0; si < plot.series.size(); ++si) {
    if (plot.series[si].label.empty()) continue;
    const char* color = kPalette[si % kPaletteSize];
    svg += "<line x1=\"" + num(kRight - 150) + "\" y1=\"" + num(ly - 4) +
           "\" x2=\"" + num(kRight - 122) + "\" y2=\"" + num(ly - 4) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kRight - 116) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(plot.series[si].label) + "</text>\n";
    ly += 18.0;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace mhn
