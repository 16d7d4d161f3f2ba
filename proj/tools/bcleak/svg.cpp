#include "svg.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

namespace bcleak::cli {

void write_svg(const std::string& path, const std::vector<FrontierCurve>& curves) {
  constexpr double kSize = 400.0, kPad = 20.0;
  double max_r = 1e-9;
  for (const auto& c : curves)
    for (const auto& p : c.points) max_r = std::max({max_r, p.r1, p.r2});
  const double scale = (kSize - 2 * kPad) / max_r;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ofstream os(path);
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\">\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kSize - kPad << "\" x2=\"" << kSize - kPad << "\" y2=\"" << kSize - kPad
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kSize - kPad
     << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& pts = curves[i].points;
    if (pts.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << colors[i % 5] << "\" points=\"";
    // Close the staircase down to both axes.
    os << kPad << ',' << kSize - kPad - pts.front().r2 * scale << ' ';
    for (const auto& p : pts) os << kPad + p.r1 * scale << ',' << kSize - kPad - p.r2 * scale << ' ';
    os << kPad + pts.back().r1 * scale << ',' << kSize - kPad << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace bcleak::cli
