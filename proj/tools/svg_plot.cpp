#include "svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string_view>

namespace gcdd::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kPlotLeft = 60.0, kPlotTop = 40.0;
constexpr double kPlotRight = 600.0, kPlotBottom = 500.0;

struct Style {
  std::string_view color;
  std::string_view glyph;
};

constexpr std::array<Style, kChartClassCount> kStyles = {{
    {"#1f77b4", "circle"},
    {"#ff7f0e", "square"},
    {"#2ca02c", "triangle-up"},
    {"#d62728", "triangle-down"},
    {"#9467bd", "diamond"},
    {"#8c564b", "cross"},
}};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void glyph(std::ostream &out, const Style &s, double x, double y, std::string_view cls,
           std::string_view extra_class) {
  const double r = 3.5;
  out << "  <";
  if (s.glyph == "circle") {
    out << "circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << '"';
  } else if (s.glyph == "square") {
    out << "rect x=\"" << num(x - r) << "\" y=\"" << num(y - r) << "\" width=\""
        << num(2 * r) << "\" height=\"" << num(2 * r) << '"';
  } else {
    std::string points;
    auto add = [&](double px, double py) { points += num(px) + "," + num(py) + " "; };
    if (s.glyph == "triangle-up") {
      add(x, y - r - 1);
      add(x - r, y + r);
      add(x + r, y + r);
    } else if (s.glyph == "triangle-down") {
      add(x, y + r + 1);
      add(x - r, y - r);
      add(x + r, y - r);
    } else if (s.glyph == "diamond") {
      add(x, y - r - 1);
      add(x + r + 1, y);
      add(x, y + r + 1);
      add(x - r - 1, y);
    } else { // cross as a plus-shaped polygon
      const double t = 1.2;
      add(x - t, y - r); add(x + t, y - r); add(x + t, y - t); add(x + r, y - t);
      add(x + r, y + t); add(x + t, y + t); add(x + t, y + r); add(x - t, y + r);
      add(x - t, y + t); add(x - r, y + t); add(x - r, y - t); add(x - t, y - t);
    }
    points.pop_back();
    out << "polygon points=\"" << points << '"';
  }
  out << " class=\"" << extra_class << "\" data-class=\"" << cls << "\" fill=\"" << s.color
      << "\" fill-opacity=\"0.75\"/>\n";
}

} // namespace

void write_svg_scatter(std::ostream &out, const DenseMatrix &coords,
                       const std::vector<ChartClass> &labels, const std::string &title) {
  const std::size_t n = coords.rows();
  auto x_of = [&](std::size_t i) { return coords(i, 0); };
  auto y_of = [&](std::size_t i) { return coords.cols() > 1 ? coords(i, 1) : 0.0; };

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xmin = i ? std::min(xmin, x_of(i)) : x_of(i);
    xmax = i ? std::max(xmax, x_of(i)) : x_of(i);
    ymin = i ? std::min(ymin, y_of(i)) : y_of(i);
    ymax = i ? std::max(ymax, y_of(i)) : y_of(i);
  }
  auto pad = [](double &lo, double &hi) {
    const double span = hi - lo > 0 ? hi - lo : 1.0;
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  auto px = [&](double x) { return kPlotLeft + (x - xmin) / (xmax - xmin) * (kPlotRight - kPlotLeft); };
  auto py = [&](double y) { return kPlotBottom - (y - ymin) / (ymax - ymin) * (kPlotBottom - kPlotTop); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "  <text x=\"" << num((kPlotLeft + kPlotRight) / 2) << "\" y=\"24\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";
  out << "  <rect x=\"" << num(kPlotLeft) << "\" y=\"" << num(kPlotTop) << "\" width=\""
      << num(kPlotRight - kPlotLeft) << "\" height=\"" << num(kPlotBottom - kPlotTop)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  // Axis extents.
  out << "  <g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">\n"
      << "    <text x=\"" << num(kPlotLeft) << "\" y=\"" << num(kPlotBottom + 14) << "\">"
      << num(xmin) << "</text>\n"
      << "    <text x=\"" << num(kPlotRight) << "\" y=\"" << num(kPlotBottom + 14)
      << "\" text-anchor=\"end\">" << num(xmax) << "</text>\n"
      << "    <text x=\"" << num(kPlotLeft - 4) << "\" y=\"" << num(kPlotBottom)
      << "\" text-anchor=\"end\">" << num(ymin) << "</text>\n"
      << "    <text x=\"" << num(kPlotLeft - 4) << "\" y=\"" << num(kPlotTop + 8)
      << "\" text-anchor=\"end\">" << num(ymax) << "</text>\n"
      << "  </g>\n";

  std::array<bool, kChartClassCount> present{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    present[c] = true;
    glyph(out, kStyles[c], px(x_of(i)), py(y_of(i)), class_symbol(labels[i]), "point");
  }

  double ly = kPlotTop + 10;
  for (ChartClass c : kAllChartClasses) {
    const auto k = static_cast<std::size_t>(c);
    if (!present[k])
      continue;
    out << "  <g class=\"legend-entry\">\n  ";
    glyph(out, kStyles[k], kPlotRight + 24, ly, class_symbol(c), "legend-glyph");
    out << "    <text x=\"" << num(kPlotRight + 36) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << class_symbol(c)
        << "</text>\n  </g>\n";
    ly += 20;
  }
  out << "</svg>\n";
}

} // namespace gcdd::cli
