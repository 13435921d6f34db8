#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "qtrig/io.hpp"

namespace qtrig::io {

std::string format_number(double v, int digits) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string write_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows,
                      std::optional<int> round_digits) {
  const int digits = round_digits.value_or(17);
  std::vector<double> snap(header.size(), 0.0);
  if (round_digits) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      double big = 0.0;
      for (const auto& row : rows) big = std::max(big, std::abs(row.at(c)));
      snap[c] = big * std::pow(10.0, -digits);
    }
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      double v = row[c];
      if (std::abs(v) < snap[c]) v = 0.0;
      out << (c ? "," : "") << format_number(v, digits);
    }
    out << '\n';
  }
  return out.str();
}

std::string series_color(std::size_t i) {
  static const char* const palette[] = {"blue", "green", "red", "orange", "purple", "brown", "magenta", "teal"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string write_svg(const std::vector<SvgSeries>& series, bool keep_aspect, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  double w = xmax - xmin;
  double h = ymax - ymin;
  if (w <= 0.0) w = h > 0.0 ? h : 1.0;
  if (h <= 0.0) h = w;
  const double mx = 0.05 * w;
  const double my = 0.05 * h;
  // SVG y grows downwards; data are drawn with y negated.
  const double vx = xmin - mx;
  const double vy = -(ymax + my);
  const double vw = w + 2 * mx;
  const double vh = h + 2 * my;
  const int digits = 9;
  const double marker_r = 0.008 * std::max(vw, vh);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" << (keep_aspect ? 800 : 500)
      << "\" viewBox=\"" << format_number(vx, digits) << ' ' << format_number(vy, digits) << ' '
      << format_number(vw, digits) << ' ' << format_number(vh, digits) << "\" preserveAspectRatio=\""
      << (keep_aspect ? "xMidYMid meet" : "none") << "\">\n";
  if (!title.empty()) out << "  <title>" << xml_escape(title) << "</title>\n";
  for (const auto& s : series) {
    out << "  <polyline fill=\"none\" stroke=\"" << xml_escape(s.color)
        << "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      out << (i ? " " : "") << format_number(s.points[i].first, digits) << ','
          << format_number(-s.points[i].second, digits);
    }
    out << "\">";
    if (!s.label.empty()) out << "<title>" << xml_escape(s.label) << "</title>";
    out << "</polyline>\n";
    if (s.markers && keep_aspect) {
      for (const auto& [x, y] : s.points) {
        out << "  <circle cx=\"" << format_number(x, digits) << "\" cy=\"" << format_number(-y, digits)
            << "\" r=\"" << format_number(marker_r, digits) << "\" fill=\"" << xml_escape(s.color) << "\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qtrig::io
