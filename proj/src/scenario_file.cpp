#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "effpar/errors.hpp"
#include "effpar/numeric.hpp"
#include "effpar/timeline.hpp"

namespace effpar::timeline {

namespace {

PerUnit parse_per_unit(std::string_view value, std::size_t line) {
  auto number = [&](std::string_view text) {
    auto v = parse_double(text);
    if (!v) throw ParseError(line, "not a number: '" + std::string(trim(text)) + "'");
    return *v;
  };
  if (value.starts_with("uniform:")) return PerUnit::uniform(number(value.substr(8)));
  if (value.starts_with("linear:")) return PerUnit::linear(number(value.substr(7)));
  if (value.find(',') == std::string_view::npos) return PerUnit::uniform(number(value));
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const auto comma = value.find(',', pos);
    values.push_back(number(value.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return PerUnit::list(std::move(values));
}

}  // namespace

TimelineScenario parse_scenario(std::istream& in) {
  TimelineScenario s;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    if (value.empty()) throw ParseError(line, "missing value for '" + key + "'");
    if (!seen.emplace(key, line).second) throw ParseError(line, "duplicate key '" + key + "'");

    auto scalar = [&]() {
      auto v = parse_double(value);
      if (!v) throw ParseError(line, "not a number: '" + std::string(value) + "'");
      return *v;
    };

    if (key == "n_units") {
      auto n = parse_integer<std::uint64_t>(value);
      if (!n || *n < 1) throw ParseError(line, "n_units must be an integer >= 1");
      s.n_units = *n;
    } else if (key == "payload_cycles") {
      s.payload_cycles = parse_per_unit(value, line);
    } else if (key == "dispatch_cycles") {
      s.dispatch_cycles = parse_per_unit(value, line);
    } else if (key == "pd_out_cycles") {
      s.pd_out_cycles = parse_per_unit(value, line);
    } else if (key == "pd_in_cycles") {
      s.pd_in_cycles = parse_per_unit(value, line);
    } else if (key == "sw_pre") {
      s.sw_pre = scalar();
    } else if (key == "sw_post") {
      s.sw_post = scalar();
    } else if (key == "os_pre") {
      s.os_pre = scalar();
    } else if (key == "os_post") {
      s.os_post = scalar();
    } else if (key == "access_init") {
      s.access_init = scalar();
    } else if (key == "access_term") {
      s.access_term = scalar();
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  if (!seen.contains("n_units")) throw ParseError(line, "missing required key 'n_units'");
  if (!seen.contains("payload_cycles")) {
    throw ParseError(line, "missing required key 'payload_cycles'");
  }

  // Field-level checks report the line that set the offending key.
  auto check = [&](const char* key, const PerUnit& p) {
    try {
      p.validate(s.n_units, key);
    } catch (const InvalidArgument& e) {
      auto it = seen.find(key);
      throw ParseError(it == seen.end() ? line : it->second, e.what());
    }
  };
  check("payload_cycles", s.payload_cycles);
  check("dispatch_cycles", s.dispatch_cycles);
  check("pd_out_cycles", s.pd_out_cycles);
  check("pd_in_cycles", s.pd_in_cycles);
  const std::pair<const char*, double> scalars[] = {
      {"sw_pre", s.sw_pre},       {"sw_post", s.sw_post},         {"os_pre", s.os_pre},
      {"os_post", s.os_post},     {"access_init", s.access_init}, {"access_term", s.access_term}};
  for (const auto& [key, v] : scalars) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ParseError(seen.at(key), std::string(key) + ": cycle counts must be >= 0");
    }
  }
  return s;
}

TimelineScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const TimelineScenario& s) {
  out << "n_units = " << s.n_units << '\n'
      << "payload_cycles = " << s.payload_cycles.to_string() << '\n'
      << "dispatch_cycles = " << s.dispatch_cycles.to_string() << '\n'
      << "pd_out_cycles = " << s.pd_out_cycles.to_string() << '\n'
      << "pd_in_cycles = " << s.pd_in_cycles.to_string() << '\n'
      << "sw_pre = " << format_roundtrip(s.sw_pre) << '\n'
      << "sw_post = " << format_roundtrip(s.sw_post) << '\n'
      << "os_pre = " << format_roundtrip(s.os_pre) << '\n'
      << "os_post = " << format_roundtrip(s.os_post) << '\n'
      << "access_init = " << format_roundtrip(s.access_init) << '\n'
      << "access_term = " << format_roundtrip(s.access_term) << '\n';
}

}  // namespace effpar::timeline
