#include "szeta/config.hpp"

#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "szeta/error.hpp"
#include "szeta/orbits.hpp"

namespace szeta {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, std::string_view key) {
  const std::string copy(trim(text));
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || *end != '\0') {
    throw Error(ErrorCode::ParseError, fmt::format("'{}' is not a number for {}", copy, key));
  }
  return v;
}

int to_int(std::string_view text, std::string_view key) {
  const auto t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::ParseError, fmt::format("'{}' is not an integer for {}", t, key));
  }
  return v;
}

std::vector<Circle> parse_circles(std::string_view text) {
  std::vector<Circle> circles;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(';', start), text.size());
    const auto item = trim(text.substr(start, stop - start));
    if (!item.empty()) {
      std::istringstream in{std::string(item)};
      std::string re, im, r, extra;
      in >> re >> im >> r;
      if (!in || (in >> extra)) {
        throw Error(ErrorCode::ParseError,
                    fmt::format("circle '{}' must be 'center_re center_im radius'", item));
      }
      circles.push_back({{to_double(re, "circles"), to_double(im, "circles")},
                         to_double(r, "circles")});
    }
    start = stop + 1;
  }
  return circles;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  bool saw_angle = false;
  bool saw_circles = false;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::ParseError, fmt::format("line {}: bad section header", line_no));
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "group" && section != "zeta" && section != "tolerances" && section != "run") {
        throw Error(ErrorCode::ParseError,
                    fmt::format("line {}: unknown section [{}]", line_no, section));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: expected key = value", line_no));
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "group.angle_degrees") {
      config.group.angle_degrees = to_double(value, key);
      saw_angle = true;
    } else if (qualified == "group.num_circles") {
      config.group.num_circles = to_int(value, key);
    } else if (qualified == "group.circles") {
      config.group.circles = parse_circles(value);
      saw_circles = true;
    } else if (qualified == "zeta.M") {
      config.M = to_int(value, key);
    } else if (qualified == "zeta.mode") {
      config.mode = parse_mode(value);
    } else if (qualified == "tolerances.newton_tol") {
      config.tolerances.newton_tol = to_double(value, key);
    } else if (qualified == "tolerances.quad_tol") {
      config.tolerances.quad_tol = to_double(value, key);
    } else if (qualified == "tolerances.power_tol") {
      config.tolerances.power_tol = to_double(value, key);
    } else if (qualified == "run.cache") {
      config.cache = std::string(value);
    } else if (qualified == "run.output") {
      config.output = std::string(value);
    } else if (qualified == "run.threads") {
      config.threads = to_int(value, key);
    } else {
      throw Error(ErrorCode::ParseError,
                  fmt::format("line {}: unknown key '{}' in [{}]", line_no, key, section));
    }
  }
  if (saw_angle && saw_circles) {
    throw Error(ErrorCode::ParseError, "give either angle_degrees or circles, not both");
  }
  if (saw_circles) config.group.angle_degrees.reset();
  check_config(config);
  return config;
}

void check_config(const RunConfig& config) {
  if (config.M < 1 || config.M > kMaxTruncation) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("M = {} outside [1, {}]", config.M, kMaxTruncation));
  }
  const auto& t = config.tolerances;
  if (!(t.newton_tol > 0.0) || !(t.quad_tol > 0.0) || !(t.power_tol > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "tolerances must be positive");
  }
  if (config.threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
}

std::string serialize_config(const RunConfig& config) {
  std::string out = "[group]\n";
  if (config.group.angle_degrees) {
    out += fmt::format("angle_degrees = {}\nnum_circles = {}\n", *config.group.angle_degrees,
                       config.group.num_circles);
  } else {
    std::string circles;
    for (const auto& c : config.group.circles) {
      if (!circles.empty()) circles += "; ";
      circles += fmt::format("{} {} {}", c.center.real(), c.center.imag(), c.radius);
    }
    out += fmt::format("circles = {}\n", circles);
  }
  out += fmt::format("[zeta]\nM = {}\nmode = {}\n", config.M, mode_name(config.mode));
  out += fmt::format("[tolerances]\nnewton_tol = {}\nquad_tol = {}\npower_tol = {}\n",
                     config.tolerances.newton_tol, config.tolerances.quad_tol,
                     config.tolerances.power_tol);
  return out;
}

std::string config_header_block(const RunConfig& config) {
  std::string out = std::string(kConfigBegin) + "\n";
  std::istringstream in(serialize_config(config));
  std::string line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  out += std::string(kConfigEnd) + "\n";
  return out;
}

RunConfig config_from_text(std::string_view text) {
  const auto begin = text.find(kConfigBegin);
  if (begin == std::string_view::npos) return parse_config(text);
  const auto end = text.find(kConfigEnd, begin);
  if (end == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "config header block is not terminated");
  }
  std::string body;
  std::istringstream in{std::string(text.substr(begin + kConfigBegin.size(),
                                                end - begin - kConfigBegin.size()))};
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.starts_with("#")) t.remove_prefix(1);
    body += std::string(trim(t)) + "\n";
  }
  return parse_config(body);
}

GroupConfig make_group(const GroupSpec& spec) {
  if (spec.angle_degrees) return build_symmetric(*spec.angle_degrees, spec.num_circles);
  return from_circles(spec.circles);
}

}  // namespace szeta
