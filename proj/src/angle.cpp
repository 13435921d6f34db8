#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <numbers>
#include <string>

#include "qtrig/io.hpp"

namespace qtrig::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a leading unsigned real; returns the number of characters consumed.
std::size_t parse_number(std::string_view s, double& out) {
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(buf.c_str(), &end);
  const auto used = static_cast<std::size_t>(end - buf.c_str());
  // strtod also accepts "inf", "nan" and hex floats; restrict to decimals.
  if (used == 0 || errno == ERANGE) return 0;
  for (std::size_t i = 0; i < used; ++i) {
    const char c = buf[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          c == '+' || c == '-')) {
      return 0;
    }
  }
  return used;
}

bool consume_pi(std::string_view& s) {
  if (s.substr(0, 2) == "pi" || s.substr(0, 2) == "PI") {
    s.remove_prefix(2);
    return true;
  }
  if (s.substr(0, 2) == "\xCF\x80") {  // UTF-8 for the Greek letter pi
    s.remove_prefix(2);
    return true;
  }
  return false;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  auto fail = [&]() -> double { throw InputError("cannot parse angle '" + original + "'"); };
  if (s.empty()) return fail();

  double sign = 1.0;
  if (s.front() == '+' || s.front() == '-') {
    sign = s.front() == '-' ? -1.0 : 1.0;
    s.remove_prefix(1);
  }
  double coef = 1.0;
  bool have_coef = false;
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '.')) {
    const std::size_t used = parse_number(s, coef);
    if (used == 0) return fail();
    s.remove_prefix(used);
    have_coef = true;
    if (!s.empty() && s.front() == '*') {
      s.remove_prefix(1);
      if (!consume_pi(s)) return fail();
      coef *= std::numbers::pi;
    } else if (consume_pi(s)) {
      coef *= std::numbers::pi;
    }
  } else if (consume_pi(s)) {
    coef = std::numbers::pi;
    have_coef = true;
  }
  if (!have_coef) return fail();
  if (!s.empty() && s.front() == '/') {
    s.remove_prefix(1);
    double den = 0.0;
    const std::size_t used = parse_number(s, den);
    if (used == 0 || den == 0.0) return fail();
    s.remove_prefix(used);
    coef /= den;
  }
  if (!trim(s).empty()) return fail();
  return sign * coef;
}

Interval<double> parse_interval(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw InputError("interval must be given as 'a,b', got '" + std::string(text) + "'");
  }
  const double a = parse_angle(text.substr(0, comma));
  const double b = parse_angle(text.substr(comma + 1));
  return Interval<double>(a, b);
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    std::string_view rest = piece;
    double sign = 1.0;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
      sign = rest.front() == '-' ? -1.0 : 1.0;
      rest.remove_prefix(1);
    }
    double v = 0.0;
    const std::size_t used = rest.empty() ? 0 : parse_number(rest, v);
    if (used == 0 || used != rest.size()) {
      throw InputError("cannot parse number '" + std::string(piece) + "' in list '" + std::string(text) + "'");
    }
    out.push_back(sign * v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace qtrig::io
