#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stringctl::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::size_t count_from(double v, const std::string& key) {
  if (v < 1.0 || v != std::floor(v) || v > 1e6) {
    throw ConfigError("'" + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::size_t parse_count(std::string_view text, const std::string& key) {
  return count_from(parse_number(text, key), key);
}

PiecewiseLinear parse_breakpoints(std::string_view text) {
  std::vector<Segment> segs;
  for (std::string_view item : split(text, ';')) {
    if (item.empty()) continue;
    const auto fields = split(item, ',');
    if (fields.size() != 3) {
      throw ConfigError("each breakpoint needs start,value,slope; got '" + std::string(item) + "'");
    }
    segs.push_back({parse_number(fields[0], "initial.breakpoints"),
                    parse_number(fields[1], "initial.breakpoints"),
                    parse_number(fields[2], "initial.breakpoints")});
  }
  if (segs.empty()) throw ConfigError("initial.breakpoints is empty");
  try {
    return PiecewiseLinear(kTwoPi, true, std::move(segs));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial.breakpoints: ") + e.what());
  }
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

const std::vector<std::string> kKnownKeys{
    "problem",           "horizon",         "seed",          "stride",
    "output",            "initial.file",    "initial.breakpoints", "initial.cosine",
    "initial.samples",   "reachable.horizons", "dual.file",  "dual.phi",
    "dual.psi",          "spectral.orders", "spectral.count"};

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile out;
  std::string section;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = std::string(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.values_.count(full) != 0) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + full + "'");
    }
    out.values_[full] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void KeyValueFile::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
}

double parse_number(std::string_view text, const std::string& key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    throw ConfigError("'" + key + "': not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_number_list(std::string_view text, const std::string& key) {
  std::vector<double> out;
  for (std::string_view item : split(text, ',')) {
    if (!item.empty()) out.push_back(parse_number(item, key));
  }
  if (out.empty()) throw ConfigError("'" + key + "' is empty");
  return out;
}

PiecewiseLinear sample_cosine_series(const std::vector<double>& coeffs, std::size_t samples) {
  if (samples < 2) throw ConfigError("initial.samples must be at least 2");
  const double h = kTwoPi / static_cast<double>(samples);
  auto value = [&coeffs](double x) {
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      sum += coeffs[n] * std::cos(static_cast<double>(n) * x);
    }
    return sum;
  };
  std::vector<Segment> segs;
  segs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x0 = h * static_cast<double>(i);
    const double y0 = value(x0);
    const double y1 = value(x0 + h);
    segs.push_back({x0, y0, (y1 - y0) / h});
  }
  return PiecewiseLinear(kTwoPi, true, std::move(segs));
}

ScenarioConfig parse_config(std::string_view text, Command command, const std::string& base_dir) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  kv.require_known(kKnownKeys);
  ScenarioConfig cfg;

  if (auto p = kv.get("problem")) {
    try {
      cfg.problem = parse_problem(*p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.problem == Problem::kCompleteStop && command != Command::kSpectral) {
    throw ConfigError("problem must be stop-moving or damping");
  }
  if (auto s = kv.get("seed")) {
    const double v = parse_number(*s, "seed");
    if (v < 0.0 || v != std::floor(v) || v > 9.0e15) throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  if (auto o = kv.get("output")) {
    if (o->empty()) throw ConfigError("output must not be empty");
    cfg.output = *o;
  }
  if (auto s = kv.get("stride")) {
    cfg.stride = parse_number(*s, "stride");
    if (!(cfg.stride > 0.0)) throw ConfigError("stride must be positive");
  }
  if (command != Command::kSpectral) {
    auto h = kv.get("horizon");
    if (!h && !(command == Command::kReachable && kv.has("reachable.horizons"))) {
      throw ConfigError("missing horizon");
    }
    if (h) {
      cfg.horizon = parse_number(*h, "horizon");
      if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
    }
  }

  if (command == Command::kSimulate) {
    const int sources = static_cast<int>(kv.has("initial.file")) +
                        static_cast<int>(kv.has("initial.breakpoints")) +
                        static_cast<int>(kv.has("initial.cosine"));
    if (sources != 1) {
      throw ConfigError(sources == 0 ? "missing initial data ([initial] file, breakpoints or cosine)"
                                     : "initial data given more than once");
    }
    if (kv.has("initial.samples") && !kv.has("initial.cosine")) {
      throw ConfigError("initial.samples only applies to cosine initial data");
    }
    if (auto f = kv.get("initial.file")) {
      try {
        cfg.initial = read_pwl_file(resolve(base_dir, *f));
      } catch (const std::exception& e) {
        throw ConfigError("initial.file: " + std::string(e.what()));
      }
      cfg.initial_source = "file " + *f;
    } else if (auto b = kv.get("initial.breakpoints")) {
      cfg.initial = parse_breakpoints(*b);
      cfg.initial_source = "breakpoints";
    } else {
      const std::vector<double> c = parse_number_list(*kv.get("initial.cosine"), "initial.cosine");
      std::size_t samples = 512;
      if (auto s = kv.get("initial.samples")) samples = parse_count(*s, "initial.samples");
      cfg.initial = sample_cosine_series(c, samples);
      cfg.initial_source = "cosine series sampled at " + std::to_string(samples) + " points";
    }
    if (!cfg.initial->periodic() || std::abs(cfg.initial->domain_length() - kTwoPi) > 1e-12) {
      throw ConfigError("initial data must be 2π-periodic");
    }
  }

  if (command == Command::kReachable) {
    if (auto hs = kv.get("reachable.horizons")) {
      cfg.horizons = parse_number_list(*hs, "reachable.horizons");
      for (double t : cfg.horizons) {
        if (!(t > 0.0)) throw ConfigError("reachable.horizons must be positive");
      }
    } else {
      cfg.horizons = {cfg.horizon};
    }
    const bool from_file = kv.has("dual.file");
    const bool inline_dual = kv.has("dual.phi") || kv.has("dual.psi");
    if (from_file == inline_dual) {
      throw ConfigError("give the dual vector once: [dual] file, or phi/psi lists");
    }
    try {
      if (from_file) {
        std::ifstream in(resolve(base_dir, *kv.get("dual.file")));
        if (!in) throw ConfigError("cannot open dual.file");
        std::stringstream ss;
        ss << in.rdbuf();
        cfg.dual = parse_dual_text(ss.str());
      } else {
        std::vector<double> phi{0.0};
        std::vector<double> psi{0.0};
        if (auto p = kv.get("dual.phi")) phi = parse_number_list(*p, "dual.phi");
        if (auto p = kv.get("dual.psi")) psi = parse_number_list(*p, "dual.psi");
        cfg.dual = DualVector(std::move(phi), std::move(psi));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("dual: ") + e.what());
    }
  }

  if (command == Command::kSpectral) {
    if (auto o = kv.get("spectral.orders")) {
      cfg.orders.clear();
      for (double v : parse_number_list(*o, "spectral.orders")) {
        cfg.orders.push_back(count_from(v, "spectral.orders"));
      }
    }
    if (auto c = kv.get("spectral.count")) cfg.root_count = parse_count(*c, "spectral.count");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path, Command command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), command, dir.empty() ? "." : dir.string());
}

}  // namespace stringctl::app
