#ifndef ADACYCLE_PLOT_HPP_
#define ADACYCLE_PLOT_HPP_

#include <string>
#include <vector>

namespace adacycle {

struct ReferenceLine {
  double value;
  std::string label;
};

// "golden", "sqrt2m1", "invsqrt2" or a decimal in [0, 1].
ReferenceLine parse_reference_line(const std::string& text);

struct PlotSpec {
  int width = 800;
  int height = 400;
  std::string title = "edge per iteration";
  std::vector<ReferenceLine> references;
};

// Edge-vs-iteration figure. Output depends only on the inputs. The series is
// repeated in a trailing comment as "t,edge" lines with round-trip decimals.
std::string plot_svg(const std::vector<double>& edges, const PlotSpec& spec);

// Reads the data comment of a figure made by plot_svg.
std::vector<double> svg_data_points(const std::string& svg);

}  // namespace adacycle

#endif  // ADACYCLE_PLOT_HPP_
