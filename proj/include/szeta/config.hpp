#pragma once

// Run configuration: a strict INI-style file
//
//   [group]
//   angle_degrees = 30
//   num_circles = 3
//   # or: circles = cx cy r; cx cy r; cx cy r
//   [zeta]
//   M = 13
//   mode = conformal
//   [tolerances]
//   newton_tol = 1e-12
//   quad_tol = 1e-8
//   power_tol = 1e-14
//   [run]
//   cache = orbits.cache
//   output = out.csv
//   threads = 1
//
// Unknown sections or keys are errors.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "szeta/geometry.hpp"
#include "szeta/zeta.hpp"

namespace szeta {

struct GroupSpec {
  std::optional<double> angle_degrees = 30.0;
  int num_circles = 3;
  std::vector<Circle> circles;  // used when angle_degrees is empty
};

struct Tolerances {
  double newton_tol = 1e-12;
  double quad_tol = 1e-8;
  double power_tol = 1e-14;
};

struct RunConfig {
  GroupSpec group;
  int M = 13;
  ZetaMode mode = ZetaMode::Conformal;
  Tolerances tolerances;
  std::string cache;
  std::string output;
  int threads = 1;
};

RunConfig parse_config(std::string_view text);

// Throws InvalidConfig on non-positive tolerances or M out of range.
void check_config(const RunConfig& config);

// Serializes the result-determining fields (group, zeta, tolerances).
std::string serialize_config(const RunConfig& config);

// Comment-prefixed copy of serialize_config, delimited so it can be read
// back out of any output file by config_from_header.
std::string config_header_block(const RunConfig& config);
inline constexpr std::string_view kConfigBegin = "# --- config ---";
inline constexpr std::string_view kConfigEnd = "# --- end config ---";

// Accepts a plain config file or an output file carrying a header block.
RunConfig config_from_text(std::string_view text);

GroupConfig make_group(const GroupSpec& spec);

}  // namespace szeta
