#include "szeta/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "szeta/error.hpp"

namespace szeta {

namespace {

constexpr double kPi = std::numbers::pi;

void require_valid(const GroupConfig& config) {
  const Diagnostics diag = validate(config);
  if (diag.ok()) return;
  auto first_problem = [&diag](std::string_view needle) {
    for (const auto& p : diag.problems) {
      if (p.find(needle) != std::string::npos) return p;
    }
    return diag.problems.front();
  };
  for (double g : diag.disc_gaps) {
    if (!(g > kGeometryTol)) throw Error(ErrorCode::DisjointnessViolation, first_problem("disjoint"));
  }
  for (double g : diag.pole_clearance) {
    if (!(g > kGeometryTol)) throw Error(ErrorCode::CayleyPoleInsideDisc, first_problem("pole"));
  }
  throw Error(ErrorCode::InvalidConfig, diag.problems.front());
}

std::pair<double, double> arc_endpoints_on_line(const Circle& circle) {
  const double dist = std::abs(circle.center);
  const double half = std::acos(1.0 / dist);
  const double dir = std::arg(circle.center);
  double x1 = cayley(std::polar(1.0, dir - half)).real();
  double x2 = cayley(std::polar(1.0, dir + half)).real();
  if (x1 > x2) std::swap(x1, x2);
  return {x1, x2};
}

}  // namespace

complex cayley(complex z) {
  const complex i{0.0, 1.0};
  return i * (1.0 + z) / (1.0 - z);
}

GroupConfig build_symmetric(double theta_degrees, int num_circles) {
  if (num_circles < 3) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("need at least 3 circles, got {}", num_circles));
  }
  if (!(theta_degrees > 0.0 && theta_degrees < 180.0)) {
    throw Error(ErrorCode::InvalidAngle,
                fmt::format("arc angle {} outside (0, 180) degrees", theta_degrees));
  }
  const double half = 0.5 * theta_degrees * kPi / 180.0;
  const double dist = 1.0 / std::cos(half);
  const double radius = std::tan(half);

  GroupConfig config;
  config.angle_degrees = theta_degrees;
  config.rotation_offset = kPi / num_circles;
  config.circles.reserve(static_cast<std::size_t>(num_circles));
  for (int k = 0; k < num_circles; ++k) {
    const double phi = config.rotation_offset + 2.0 * kPi * k / num_circles;
    config.circles.push_back({std::polar(dist, phi), radius});
  }
  require_valid(config);
  return config;
}

GroupConfig from_circles(std::vector<Circle> circles) {
  GroupConfig config;
  config.circles = std::move(circles);
  if (config.circles.size() < 3) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("need at least 3 circles, got {}", config.circles.size()));
  }
  require_valid(config);
  return config;
}

std::vector<Generator> to_boundary_maps(const GroupConfig& config) {
  std::vector<Generator> out;
  out.reserve(config.size());
  for (std::size_t k = 0; k < config.size(); ++k) {
    const Circle& circle = config.circles[k];
    if (std::abs(1.0 - circle.center) <= circle.radius + kGeometryTol) {
      throw Error(ErrorCode::CayleyPoleInsideDisc,
                  fmt::format("circle {} contains the Cayley pole z=1", k));
    }
    const auto [x1, x2] = arc_endpoints_on_line(circle);
    const double p = 0.5 * (x1 + x2);
    const double rho = 0.5 * (x2 - x1);
    Generator gen;
    gen.map.matrix = {p / rho, (rho * rho - p * p) / rho, 1.0 / rho, -p / rho};
    gen.map.det_sign = -1;
    gen.interval = {x1, x2, static_cast<int>(k)};
    out.push_back(gen);
  }
  return out;
}

std::vector<BoundaryMap> maps_of(std::span<const Generator> generators) {
  std::vector<BoundaryMap> maps;
  maps.reserve(generators.size());
  for (const auto& g : generators) maps.push_back(g.map);
  return maps;
}

Diagnostics validate(const GroupConfig& config) {
  Diagnostics diag;
  const auto& cs = config.circles;
  if (cs.size() < 3) diag.problems.push_back("fewer than 3 circles");

  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double dist2 = std::norm(cs[i].center);
    if (!(cs[i].radius > 0.0) || dist2 <= 1.0) {
      diag.orthogonality_residuals.push_back(std::numeric_limits<double>::infinity());
      diag.problems.push_back(fmt::format("circle {} is degenerate", i));
      continue;
    }
    const double resid = std::abs(std::sqrt(dist2 - 1.0) - cs[i].radius);
    diag.orthogonality_residuals.push_back(resid);
    if (resid > kGeometryTol) {
      diag.problems.push_back(
          fmt::format("circle {} not orthogonal to the unit circle (residual {:.3e})", i, resid));
    }
    const double clearance = std::abs(1.0 - cs[i].center) - cs[i].radius;
    diag.pole_clearance.push_back(clearance);
    if (!(clearance > kGeometryTol)) {
      diag.problems.push_back(fmt::format("circle {} contains the Cayley pole z=1", i));
    }
  }

  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const double gap = std::abs(cs[i].center - cs[j].center) - cs[i].radius - cs[j].radius;
      diag.disc_gaps.push_back(gap);
      if (!(gap > kGeometryTol)) {
        diag.problems.push_back(
            fmt::format("discs {} and {} are not disjoint (gap {:.3e})", i, j, gap));
      }
    }
  }

  if (diag.ok()) {
    std::vector<std::pair<double, double>> spans;
    for (const auto& c : cs) spans.push_back(arc_endpoints_on_line(c));
    std::sort(spans.begin(), spans.end());
    for (std::size_t k = 0; k + 1 < spans.size(); ++k) {
      const double gap = spans[k + 1].first - spans[k].second;
      diag.interval_gaps.push_back(gap);
      if (!(gap > 0.0)) {
        diag.problems.push_back(fmt::format("boundary intervals overlap (gap {:.3e})", gap));
      }
    }
  }
  return diag;
}

std::uint64_t fingerprint(const GroupConfig& config) {
  // FNV-1a over the raw bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(config.size());
  for (const auto& c : config.circles) {
    mix(std::bit_cast<std::uint64_t>(c.center.real()));
    mix(std::bit_cast<std::uint64_t>(c.center.imag()));
    mix(std::bit_cast<std::uint64_t>(c.radius));
  }
  return h;
}

}  // namespace szeta
