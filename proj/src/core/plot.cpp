#include "adacycle/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "adacycle/error.hpp"
#include "adacycle/numeric.hpp"

namespace adacycle {

ReferenceLine parse_reference_line(const std::string& text) {
  if (text == "golden") return {(std::sqrt(5.0) - 1.0) / 2.0, "(sqrt(5)-1)/2"};
  if (text == "sqrt2m1") return {std::sqrt(2.0) - 1.0, "sqrt(2)-1"};
  if (text == "invsqrt2") return {1.0 / std::sqrt(2.0), "1/sqrt(2)"};
  double v = 0.0;
  try {
    v = to_double(parse_rational(text));
  } catch (const Error&) {
    throw Error(ErrorCode::invalid_argument, "unknown reference line '" + text + "'");
  }
  if (v < 0.0 || v > 1.0)
    throw Error(ErrorCode::invalid_argument, "reference line must lie in [0,1]");
  return {v, text};
}

namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string plot_svg(const std::vector<double>& edges, const PlotSpec& spec) {
  if (edges.empty()) throw Error(ErrorCode::insufficient_data, "nothing to plot: empty trace");
  if (spec.width < 100 || spec.height < 100)
    throw Error(ErrorCode::invalid_argument, "figure must be at least 100x100");
  const double left = 60, right = 140, top = 30, bottom = 40;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  const double span = edges.size() > 1 ? static_cast<double>(edges.size() - 1) : 1.0;
  auto px = [&](std::size_t t) { return left + pw * static_cast<double>(t) / span; };
  auto py = [&](double v) { return top + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
  // Axes and ticks.
  out << "<g stroke=\"black\" fill=\"none\">\n";
  out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + ph) << "\" x2=\""
      << fixed(left + pw) << "\" y2=\"" << fixed(top + ph) << "\"/>\n";
  out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
      << "\" y2=\"" << fixed(top + ph) << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = i / 4.0;
    out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(v) + 4)
        << "\" text-anchor=\"end\">" << format_significant(v, 3) << "</text>\n";
  }
  out << "<text x=\"" << fixed(left) << "\" y=\"" << fixed(top + ph + 16) << "\">0</text>\n";
  out << "<text x=\"" << fixed(left + pw) << "\" y=\"" << fixed(top + ph + 16)
      << "\" text-anchor=\"end\">" << edges.size() - 1 << "</text>\n";
  out << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(top + ph + 32)
      << "\" text-anchor=\"middle\">iteration</text>\n";
  out << "</g>\n";

  for (const auto& ref : spec.references) {
    out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(ref.value)) << "\" x2=\""
        << fixed(left + pw) << "\" y2=\"" << fixed(py(ref.value))
        << "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
    out << "<text x=\"" << fixed(left + pw + 6) << "\" y=\"" << fixed(py(ref.value) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"red\">" << escape(ref.label)
        << "</text>\n";
  }

  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
  for (std::size_t t = 0; t < edges.size(); ++t) {
    if (t) out << ' ';
    out << fixed(px(t)) << ',' << fixed(py(edges[t]));
  }
  out << "\"/>\n";
  if (edges.size() == 1)
    out << "<circle cx=\"" << fixed(px(0)) << "\" cy=\"" << fixed(py(edges[0]))
        << "\" r=\"2\" fill=\"steelblue\"/>\n";

  out << "<!-- data t,edge\n";
  for (std::size_t t = 0; t < edges.size(); ++t) out << t << ',' << format_double(edges[t]) << '\n';
  out << "-->\n</svg>\n";
  return out.str();
}

std::vector<double> svg_data_points(const std::string& svg) {
  const std::string marker = "<!-- data t,edge\n";
  const auto begin = svg.find(marker);
  if (begin == std::string::npos) throw Error(ErrorCode::parse, "figure has no data comment");
  const auto end = svg.find("-->", begin);
  if (end == std::string::npos) throw Error(ErrorCode::parse, "unterminated data comment");
  std::istringstream in(svg.substr(begin + marker.size(), end - begin - marker.size()));
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::parse, "bad data line '" + line + "'");
    if (std::stoul(line.substr(0, comma)) != out.size())
      throw Error(ErrorCode::parse, "data lines out of order");
    out.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  return out;
}

}  // namespace adacycle
