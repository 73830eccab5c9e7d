#include "saalab/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace saalab::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 50.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

void write_loglog_svg(std::ostream& out, const ErrorSeries& series,
                      const std::optional<RateFit>& fit) {
  struct Point {
    double x, y;
  };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    const auto n = series.checkpoints[i];
    const double e = series.abs_estimate(i);
    if (n >= 1 && e > 0.0) pts.push_back({std::log10(static_cast<double>(n)), std::log10(e)});
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (pts.empty()) {
    out << "<text x=\"" << kMargin << "\" y=\"" << kMargin << "\">no positive estimates</text>\n"
        << "</svg>\n";
    return;
  }

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (x1 - x0 < 1e-9) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-9) y1 = y0 + 1.0;
  auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto sy = [&](double y) {
    return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };

  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">log10 n</text>\n"
      << "<text x=\"12\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 12 " << kHeight / 2
      << ")\" text-anchor=\"middle\">log10 |" << to_string(series.kind)
      << " error|</text>\n";

  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& p : pts) out << num(sx(p.x)) << ',' << num(sy(p.y)) << ' ';
  out << "\"/>\n";
  for (const auto& p : pts) {
    out << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }

  if (fit) {
    const double ln10 = std::log(10.0);
    auto line_y = [&](double lx) { return (fit->intercept + fit->slope * lx * ln10) / ln10; };
    out << "<line x1=\"" << num(sx(x0)) << "\" y1=\"" << num(sy(line_y(x0))) << "\" x2=\""
        << num(sx(x1)) << "\" y2=\"" << num(sy(line_y(x1)))
        << "\" stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n"
        << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 10
        << "\" text-anchor=\"end\">slope " << num(fit->slope) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace saalab::cli
