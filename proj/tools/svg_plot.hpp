#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gcdd/dataset.hpp"
#include "gcdd/linalg.hpp"

namespace gcdd::cli {

/// Scatter plot of the first two coordinate columns (a single column is
/// plotted against zero). One glyph and color per class; the legend lists
/// only classes that occur. Axes span the data plus a 5% margin.
void write_svg_scatter(std::ostream &out, const DenseMatrix &coords,
                       const std::vector<ChartClass> &labels,
                       const std::string &title = {});

} // namespace gcdd::cli
