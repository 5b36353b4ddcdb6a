#pragma once

// Zeros of the truncated zeta function: the largest real zero (the limit-set
// dimension), argument-principle counts over rectangles, and the zero-density
// and log|Z| statistics.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "szeta/zeta.hpp"

namespace szeta {

struct Rectangle {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diameter() const;
  bool contains(complex s) const {
    return x0 <= s.real() && s.real() <= x1 && y0 <= s.imag() && s.imag() <= y1;
  }
};

// f(s) together with f'(s).
using AnalyticFunction = std::function<std::pair<complex, complex>(complex)>;

AnalyticFunction as_function(const ZetaSeries& series);

struct DimensionOptions {
  double tol = 1e-12;
  double scan_step = 0.05;
  int max_iterations = 200;
};

struct DimensionResult {
  double delta = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // |Z(delta)|
};

// Largest real zero of Z_M in (0, 1]: downward scan for the first sign
// change, then Newton safeguarded by bisection inside the bracket.
DimensionResult dimension(const ZetaSeries& series, const DimensionOptions& options = {});

struct CountOptions {
  double quad_tol = 1e-8;
  double floor = 1e-8;          // minimum |f| tolerated on the contour
  int gauss_order = 16;
  double initial_panel = 0.5;
  int max_refinements = 3;
};

struct ZeroCount {
  complex integral;   // (1 / 2 pi i) * contour integral of f'/f
  int count = 0;
  double residual = 0.0;
  std::size_t panels = 0;
  double min_abs = 0.0;  // smallest |f| seen at a quadrature node
};

ZeroCount count_zeros(const AnalyticFunction& f, const Rectangle& region,
                      const CountOptions& options = {});
ZeroCount count_zeros(const ZetaSeries& series, const Rectangle& region,
                      const CountOptions& options = {});

struct ZeroBox {
  Rectangle box;
  int count = 0;
};

// Recursive quadrisection until boxes are smaller than `resolution`; only
// boxes holding zeros are returned.
std::vector<ZeroBox> locate_zeros(const AnalyticFunction& f, const Rectangle& region,
                                  double resolution, const CountOptions& options = {});
std::vector<ZeroBox> locate_zeros(const ZetaSeries& series, const Rectangle& region,
                                  double resolution, const CountOptions& options = {});

struct DensityOptions {
  double x1 = 10.0;
  double y0 = -0.1;
  double y_min = 2.0;     // first grid point; grid is log-spaced up to y_max
  CountOptions count;
  int threads = 1;
};

struct DensityRow {
  double y = 0.0;
  // zeros in [x0, x1] x [y0, y]
  int count = 0;
  std::optional<double> statistic;  // log(count)/log(y) - 1
  // zeros with |Im s| <= y, by conjugate symmetry: 2 count - count([y0, -y0])
  int symmetric_count = 0;
  std::optional<double> symmetric_statistic;
};

std::vector<DensityRow> density_grid(const ZetaSeries& series, double x0, double y_max,
                                     int samples, const DensityOptions& options = {});

// log(count)/log(y) - 1, empty when either logarithm is undefined or zero.
std::optional<double> density_statistic(int count, double y);

struct LogZSample {
  complex s;
  double abs_z = 0.0;
  std::optional<double> statistic;  // log(log|Z|)/log|s|
};

std::optional<double> logz_statistic(double abs_z, double abs_s);

// `samples` points: Im s evenly stratified over [y0, y1], Re s from the
// golden-ratio sequence over [x0, x1].
std::vector<LogZSample> logz_grid(const ZetaSeries& series, const Rectangle& region, int samples,
                                  int threads = 1);

}  // namespace szeta
