#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "loopfluct/cli/commands.hpp"

namespace loopfluct::cli {

std::string scaling_svg(const std::vector<std::pair<std::string, ScalingFit>>& fits) {
  constexpr double W = 640, H = 480, ML = 70, MR = 160, MT = 30, MB = 60;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& [name, fit] : fits) {
    for (const auto& [x, y] : fit.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x0 < x1)) { x0 -= 1; x1 += 1; }
  if (!(y0 < y1)) { y0 -= 1; y1 += 1; }
  const double padx = 0.05 * (x1 - x0), pady = 0.08 * (y1 - y0);
  x0 -= padx; x1 += padx; y0 -= pady; y1 += pady;
  auto sx = [&](double x) { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); };
  auto sy = [&](double y) { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); };

  std::ostringstream os;
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<path d=\"M%.1f %.1f V%.1f H%.1f\" stroke=\"black\" fill=\"none\"/>\n", ML, MT,
                H - MB, W - MR);
  os << buf;
  // Ticks at integer powers of two on the T axis, natural-log units on the value axis.
  for (int k = static_cast<int>(std::ceil(x0 / std::log(2.0))); k * std::log(2.0) <= x1; ++k) {
    const double px = sx(k * std::log(2.0));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                  px, H - MB, px, H - MB + 5, px, H - MB + 20, std::exp2(k));
    os << buf;
  }
  for (int k = static_cast<int>(std::ceil(y0)); k <= y1; ++k) {
    const double py = sy(k);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">e^%d</text>\n",
                  ML - 5, py, ML, py, ML - 8, py + 4, k);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">T</text>\n",
                (ML + W - MR) / 2, H - 15);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"15\" y=\"%.1f\" transform=\"rotate(-90 15 %.1f)\" "
                "text-anchor=\"middle\">mean (log scale)</text>\n",
                (MT + H - MB) / 2, (MT + H - MB) / 2);
  os << buf;

  int idx = 0;
  for (const auto& [name, fit] : fits) {
    const char* c = colors[idx % 6];
    for (const auto& [x, y] : fit.points) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"%s\"/>\n", sx(x),
                    sy(y), c);
      os << buf;
    }
    const double ya = fit.intercept + fit.exponent * (x0 + padx);
    const double yb = fit.intercept + fit.exponent * (x1 - padx);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"/>\n",
                  sx(x0 + padx), sy(ya), sx(x1 - padx), sy(yb), c);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">%s %.3f</text>\n", W - MR + 10,
                  MT + 18.0 * (idx + 1), c, name.c_str(), fit.exponent);
    os << buf;
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace loopfluct::cli
