#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfvem::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Log-log line chart with decade grid lines and a legend. Non-positive or
/// non-finite points are skipped.
void write_loglog_svg(std::ostream& out, const std::string& title, const std::string& xlabel,
                      const std::vector<PlotSeries>& series);

}  // namespace sfvem::cli
