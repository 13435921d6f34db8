#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qtrig/io.hpp"

namespace qtrig::io {
namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Structural errors are reported at the line of the named key.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_of(text, pos);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

PolygonFile parse_polygon_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    fail(source, line_of(text, e.byte == 0 ? 0 : e.byte - 1), std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail(source, 1, "top-level value must be an object");
  if (!doc.contains("points")) fail(source, 1, "missing \"points\"");

  const std::size_t points_line = line_of_key(text, "points");
  const json& pts = doc.at("points");
  if (!pts.is_array() || pts.empty()) fail(source, points_line, "\"points\" must be a non-empty array");

  std::vector<std::vector<double>> coords;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const json& p = pts[k];
    if (!p.is_array() || p.empty()) {
      fail(source, points_line, "point " + std::to_string(k) + " must be a non-empty array of numbers");
    }
    std::vector<double> c;
    for (const json& v : p) {
      if (!v.is_number()) fail(source, points_line, "point " + std::to_string(k) + " has a non-numeric coordinate");
      c.push_back(v.get<double>());
    }
    if (!coords.empty() && c.size() != coords.front().size()) {
      fail(source, points_line, "point " + std::to_string(k) + " has dimension " + std::to_string(c.size()) +
                                    ", expected " + std::to_string(coords.front().size()));
    }
    coords.push_back(std::move(c));
  }

  std::optional<std::vector<double>> weights;
  if (doc.contains("weights") && !doc.at("weights").is_null()) {
    const std::size_t weights_line = line_of_key(text, "weights");
    const json& w = doc.at("weights");
    if (!w.is_array()) fail(source, weights_line, "\"weights\" must be an array of numbers");
    weights.emplace();
    for (const json& v : w) {
      if (!v.is_number()) fail(source, weights_line, "\"weights\" must be an array of numbers");
      weights->push_back(v.get<double>());
    }
    if (weights->size() != coords.size()) {
      fail(source, weights_line, std::to_string(weights->size()) + " weights for " +
                                     std::to_string(coords.size()) + " points");
    }
  }
  return {ControlPolygon<double>::from_points(coords), std::move(weights)};
}

PolygonFile read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": file not found or unreadable");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polygon_json(buf.str(), path);
}

}  // namespace qtrig::io
