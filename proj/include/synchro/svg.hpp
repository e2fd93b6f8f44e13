#pragma once

// Minimal line/scatter SVG for power curves. CSV is the canonical output;
// this is a convenience rendering with error bars, nothing more.

#include <string>
#include <vector>

namespace synchro {

struct SvgSeries {
  std::vector<double> x, y, err;  // err may be empty
  std::string color = "#1f77b4";
  std::string label;
};

void write_svg_curves(const std::string& path, const std::vector<SvgSeries>& series,
                      const std::string& title, const std::string& xlabel,
                      const std::string& ylabel);

}  // namespace synchro
