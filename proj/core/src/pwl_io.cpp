#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stringctl/pwlin.hpp"

namespace stringctl {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "' in pwl text");
  }
  return v;
}

}  // namespace

std::string to_pwl_text(const PiecewiseLinear& f) {
  std::string out = "#pwl period=" + format_double(f.domain_length()) +
                    " periodic=" + (f.periodic() ? "1" : "0") + "\n";
  for (const Segment& s : f.segments()) {
    out += format_double(s.start) + "," + format_double(s.value) + "," +
           format_double(s.slope) + "\n";
  }
  return out;
}

PiecewiseLinear parse_pwl_text(std::string_view text) {
  bool have_header = false;
  double period = 0.0;
  bool periodic = true;
  std::vector<Segment> segments;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;

    if (line.starts_with("#pwl")) {
      std::istringstream fields{std::string(line.substr(4))};
      std::string token;
      bool have_period = false;
      while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "period") {
          period = parse_double(value);
          have_period = true;
        } else if (key == "periodic") {
          if (value != "0" && value != "1") {
            throw std::invalid_argument("periodic flag must be 0 or 1");
          }
          periodic = value == "1";
        }
      }
      if (!have_period) throw std::invalid_argument("pwl header lacks period=");
      have_header = true;
      continue;
    }
    if (line.front() == '#') continue;
    if (!have_header) throw std::invalid_argument("pwl text must start with a #pwl header");

    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw std::invalid_argument("pwl segment line needs three comma-separated fields");
    }
    segments.push_back({parse_double(line.substr(0, c1)),
                        parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                        parse_double(line.substr(c2 + 1))});
  }
  if (!have_header) throw std::invalid_argument("missing #pwl header");
  return PiecewiseLinear(period, periodic, std::move(segments));
}

PiecewiseLinear read_pwl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pwl file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pwl_text(buf.str());
}

void write_pwl_file(const std::string& path, const PiecewiseLinear& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pwl file " + path);
  out << to_pwl_text(f);
}

}  // namespace stringctl
