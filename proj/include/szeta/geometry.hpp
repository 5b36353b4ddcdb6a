#pragma once

// Reflection-circle configurations in the Poincare disc and their reduction
// to fractional-linear maps of the real line.
//
// A circle orthogonal to the unit circle is sent by the Cayley transform
// z -> i(1+z)/(1-z) to a circle orthogonal to the real axis; inversion in it
// acts on the real line as x -> p + rho^2/(x - p).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace szeta {

using complex = std::complex<double>;

inline constexpr double kGeometryTol = 1e-12;

struct Circle {
  complex center;
  double radius = 0.0;
};

struct GroupConfig {
  std::vector<Circle> circles;
  std::optional<double> angle_degrees;
  double rotation_offset = 0.0;

  std::size_t size() const { return circles.size(); }
};

struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// x -> (ax+b)/(cx+d), normalized so |det| = 1.
struct BoundaryMap {
  Mat2 matrix;
  int det_sign = -1;

  double apply(double x) const {
    return (matrix.a * x + matrix.b) / (matrix.c * x + matrix.d);
  }
  // Signed derivative det/(cx+d)^2.
  double derivative(double x) const {
    const double q = matrix.c * x + matrix.d;
    return matrix.det() / (q * q);
  }
};

struct BoundaryInterval {
  double lo = 0.0;
  double hi = 0.0;
  int owner = 0;

  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct Generator {
  BoundaryMap map;
  BoundaryInterval interval;
};

// Symmetric configuration: num_circles discs whose boundary arcs each subtend
// theta_degrees, centers spaced evenly starting at pi/num_circles.
GroupConfig build_symmetric(double theta_degrees, int num_circles);

// Explicit circles; throws unless every invariant holds.
GroupConfig from_circles(std::vector<Circle> circles);

complex cayley(complex z);

std::vector<Generator> to_boundary_maps(const GroupConfig& config);

std::vector<BoundaryMap> maps_of(std::span<const Generator> generators);

struct Diagnostics {
  std::vector<double> orthogonality_residuals;  // |sqrt(|c|^2-1) - r| per circle
  std::vector<double> disc_gaps;                // |ci-cj| - ri - rj, i<j
  std::vector<double> pole_clearance;           // |1-c| - r per circle
  std::vector<double> interval_gaps;            // gaps between consecutive real intervals
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

Diagnostics validate(const GroupConfig& config);

// Stable 64-bit hash of the circle data; keys the orbit-table cache.
std::uint64_t fingerprint(const GroupConfig& config);

}  // namespace szeta
