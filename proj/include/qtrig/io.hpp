#pragma once

// File formats used by the command-line tool: angle expressions, polygon
// JSON files, and CSV / SVG writers.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtrig/curve.hpp"
#include "qtrig/kernel.hpp"

namespace qtrig::io {

/// Malformed command-line value or input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses an angle in radians: "0.3", "pi", "-pi/2", "3pi/2", "3*pi/4", "1/3".
double parse_angle(std::string_view text);

/// Parses "a,b" with both ends in parse_angle syntax.
Interval<double> parse_interval(std::string_view text);

/// Parses a comma-separated list of reals ("1,-2,3").
std::vector<double> parse_real_list(std::string_view text);

struct PolygonFile {
  ControlPolygon<double> polygon;
  std::optional<std::vector<double>> weights;
};

/// {"points": [[x, y, ...], ...], "weights": [w0, ...]}; weights optional.
/// Errors carry the line number of the offending token.
PolygonFile parse_polygon_json(std::string_view text, const std::string& source = "<input>");
PolygonFile read_polygon_file(const std::string& path);

/// printf-style %.{digits}g.
std::string format_number(double v, int digits);

/// Comma-delimited table with a header row. With `round_digits` set, values
/// are printed with that many significant digits after values smaller than
/// 10^-digits times their column's largest magnitude are snapped to zero;
/// otherwise 17 significant digits are used.
std::string write_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows,
                      std::optional<int> round_digits = std::nullopt);

struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string color;
  bool dashed = false;
  bool markers = false;
  std::string label;
};

/// Polylines in data coordinates (y up). The viewBox is the data bounding box
/// plus a 5% margin. `keep_aspect` preserves geometry (curves); otherwise the
/// plot is stretched to the canvas (function graphs).
std::string write_svg(const std::vector<SvgSeries>& series, bool keep_aspect,
                      const std::string& title = "");

/// Stroke color for the i-th q value: blue, green, red, then a fixed cycle.
std::string series_color(std::size_t i);

}  // namespace qtrig::io
