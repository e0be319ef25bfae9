#pragma once

// Minimal SVG renderings of sweep and surface data. CSV stays the source of
// truth; these are for a quick look.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "squeezelab/io.hpp"

namespace squeezelab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline constexpr double kWidth = 640, kHeight = 420, kMargin = 60;
inline const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double map(double v, double pixel_lo, double pixel_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double t = ((log ? std::log10(v) : v) - a) / (b - a);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

inline Axis make_axis(std::vector<double> values, bool log) {
  Axis ax;
  ax.log = log;
  if (log) std::erase_if(values, [](double v) { return !(v > 0.0); });
  if (values.empty()) return ax;
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  ax.lo = *mn;
  ax.hi = *mx;
  if (ax.hi == ax.lo) {
    ax.lo = log ? ax.lo / 2 : ax.lo - 1;
    ax.hi = log ? ax.hi * 2 : ax.hi + 1;
  }
  return ax;
}

inline std::string num(double v) { return io::format_number(std::round(v * 100.0) / 100.0); }

}  // namespace detail

inline std::string line_plot(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                             bool log_x, bool log_y) {
  using namespace detail;
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis ax = make_axis(xs, log_x);
  const Axis ay = make_axis(ys, log_y);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  o << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
    << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"12\">"
    << x_label << (log_x ? " (log)" : "") << "</text>\n";
  o << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" font-size=\"10\">" << io::format_number(ax.lo)
    << "</text>\n";
  o << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"end\" font-size=\"10\">"
    << io::format_number(ax.hi) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % 5];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((log_x && !(s.x[i] > 0)) || (log_y && !(s.y[i] > 0))) continue;
      o << num(ax.map(s.x[i], kMargin, kWidth - kMargin)) << ',' << num(ay.map(s.y[i], kHeight - kMargin, kMargin)) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 16 + 14 * static_cast<double>(k) << "\" font-size=\"12\" fill=\""
      << colour << "\">" << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

/// Heatmap of z over a rectangular (x, y) grid given as x-major rows.
inline std::string heatmap(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z,
                           const std::string& title, const std::string& x_label, const std::string& y_label, bool log_x) {
  using namespace detail;
  if (z.size() != x.size() * y.size() || x.empty() || y.empty()) throw std::invalid_argument("heatmap: grid mismatch");
  const Axis ax = make_axis(x, log_x);
  const Axis ay = make_axis(y, false);
  auto [zmin_it, zmax_it] = std::minmax_element(z.begin(), z.end());
  const double zlo = std::log10(std::max(*zmin_it, 1e-300));
  const double zhi = std::log10(std::max(*zmax_it, 1e-300));
  const double cell_w = (kWidth - 2 * kMargin) / static_cast<double>(x.size());
  const double cell_h = (kHeight - 2 * kMargin) / static_cast<double>(y.size());
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << " (colour: log10 S)</text>\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double v = std::log10(std::max(z[i * y.size() + j], 1e-300));
      const double t = zhi > zlo ? (v - zlo) / (zhi - zlo) : 0.5;
      const int red = static_cast<int>(std::lround(255 * t));
      const int blue = 255 - red;
      o << "<rect x=\"" << num(kMargin + cell_w * static_cast<double>(i)) << "\" y=\""
        << num(kHeight - kMargin - cell_h * static_cast<double>(j + 1)) << "\" width=\"" << num(cell_w + 0.5)
        << "\" height=\"" << num(cell_h + 0.5) << "\" fill=\"rgb(" << red << ",64," << blue << ")\"/>\n";
    }
  }
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
    << (log_x ? " (log)" : "") << ": " << io::format_number(ax.lo) << " .. " << io::format_number(ax.hi) << "</text>\n";
  o << "<text x=\"15\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 15 " << kHeight / 2 << ")\">"
    << y_label << ": " << io::format_number(ay.lo) << " .. " << io::format_number(ay.hi) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace squeezelab::svg
