#pragma once

#include <string>
#include <vector>

namespace svdc_tools {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Minimal static line chart. Non-finite points are skipped.
std::string render_svg(const Chart& chart);

}  // namespace svdc_tools
