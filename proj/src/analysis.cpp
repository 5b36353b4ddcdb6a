#include "szeta/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "szeta/error.hpp"
#include "szeta/parallel.hpp"
#include "szeta/quadrature.hpp"

namespace szeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(const Rectangle& r) {
  return fmt::format("[{}, {}] x [{}, {}]", r.x0, r.x1, r.y0, r.y1);
}

ZeroCount integrate_once(const AnalyticFunction& f, const Rectangle& region,
                         const CountOptions& options, double tol) {
  double min_abs = std::numeric_limits<double>::infinity();
  auto log_derivative = [&](complex s) {
    const auto [value, deriv] = f(s);
    min_abs = std::min(min_abs, std::abs(value));
    return deriv / value;
  };

  LineIntegralOptions line;
  line.order = options.gauss_order;
  line.tol = tol;
  line.initial_panel = options.initial_panel;

  const complex corners[4] = {{region.x0, region.y0}, {region.x1, region.y0},
                              {region.x1, region.y1}, {region.x0, region.y1}};
  complex total = 0.0;
  std::size_t panels = 0;
  bool resolved = true;
  for (int k = 0; k < 4; ++k) {
    const auto edge = integrate_segment(log_derivative, corners[k], corners[(k + 1) % 4], line);
    total += edge.value;
    panels += edge.panels;
    resolved = resolved && edge.resolved;
    if (min_abs < options.floor) break;
  }
  if (min_abs < options.floor || !std::isfinite(std::abs(total))) {
    throw Error(ErrorCode::ContourNearZero,
                fmt::format("|f| = {:.3e} on the boundary of {}; shift the rectangle", min_abs,
                            describe(region)));
  }
  if (!resolved) {
    throw Error(ErrorCode::ContourNearZero,
                fmt::format("quadrature could not resolve the boundary of {}", describe(region)));
  }

  ZeroCount out;
  out.integral = total / complex(0.0, kTwoPi);
  out.count = static_cast<int>(std::lround(out.integral.real()));
  out.residual = std::abs(out.integral - static_cast<double>(out.count));
  out.panels = panels;
  out.min_abs = min_abs;
  return out;
}

std::vector<ZeroBox> locate_recursive(const AnalyticFunction& f, const Rectangle& region,
                                      int count, double resolution, const CountOptions& options) {
  if (count == 0) return {};
  if (region.diameter() < resolution) return {{region, count}};

  // Split lines are nudged off the midpoint when a child boundary runs into
  // a zero.
  constexpr double kOffsets[] = {0.5, 0.5 + 0.0173, 0.5 - 0.0291, 0.5 + 0.0437, 0.5 - 0.0611};
  for (double frac : kOffsets) {
    const double xm = region.x0 + frac * region.width();
    const double ym = region.y0 + frac * region.height();
    const Rectangle children[4] = {{region.x0, xm, region.y0, ym},
                                   {xm, region.x1, region.y0, ym},
                                   {region.x0, xm, ym, region.y1},
                                   {xm, region.x1, ym, region.y1}};
    int counts[4];
    try {
      for (int k = 0; k < 4; ++k) counts[k] = count_zeros(f, children[k], options).count;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ContourNearZero) continue;
      throw;
    }
    if (counts[0] + counts[1] + counts[2] + counts[3] != count) {
      throw Error(ErrorCode::NonIntegerResult,
                  fmt::format("child counts of {} do not add up to {}", describe(region), count));
    }
    std::vector<ZeroBox> out;
    for (int k = 0; k < 4; ++k) {
      auto part = locate_recursive(f, children[k], counts[k], resolution, options);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw Error(ErrorCode::ContourNearZero,
              fmt::format("no zero-free split found for {}", describe(region)));
}

}  // namespace

double Rectangle::diameter() const { return std::hypot(width(), height()); }

AnalyticFunction as_function(const ZetaSeries& series) {
  return [&series](complex s) {
    const ZetaValue v = series.evaluate(s);
    return std::pair{v.z, v.dz};
  };
}

DimensionResult dimension(const ZetaSeries& series, const DimensionOptions& options) {
  if (series.mode() != ZetaMode::Conformal) {
    throw Error(ErrorCode::InvalidConfig, "dimension solve expects the conformal zeta function");
  }
  auto value = [&](double s) { return series.evaluate(complex(s, 0.0)); };

  double hi = 1.0;
  double f_hi = value(hi).z.real();
  double lo = hi;
  double f_lo = f_hi;
  bool found = f_hi == 0.0;
  if (found) return {hi, 0, hi, hi, 0.0};
  const int steps = static_cast<int>(std::ceil(1.0 / options.scan_step));
  for (int k = 1; k <= steps && !found; ++k) {
    lo = std::max(0.0, 1.0 - k * options.scan_step);
    f_lo = value(lo).z.real();
    if (f_lo == 0.0) return {lo, 0, lo, lo, 0.0};
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      found = true;
      break;
    }
    hi = lo;
    f_hi = f_lo;
  }
  if (!found) {
    throw Error(ErrorCode::NoSignChange,
                fmt::format("Z_{} has no sign change on [0, 1]", series.order()));
  }

  DimensionResult result;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  const bool lo_negative = f_lo < 0.0;
  double x = 0.5 * (lo + hi);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const ZetaValue v = value(x);
    const double fx = v.z.real();
    const double dfx = v.dz.real();
    if (fx == 0.0) {
      result.delta = x;
      result.iterations = iter;
      result.residual = 0.0;
      return result;
    }
    if ((fx < 0.0) == lo_negative) {
      lo = x;
    } else {
      hi = x;
    }
    double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - x;
    x = next;
    if (std::abs(step) < options.tol) {
      result.delta = x;
      result.iterations = iter;
      result.residual = std::abs(value(x).z);
      return result;
    }
  }
  throw Error(ErrorCode::MaxIterations,
              fmt::format("Newton did not converge in {} iterations", options.max_iterations));
}

ZeroCount count_zeros(const AnalyticFunction& f, const Rectangle& region,
                      const CountOptions& options) {
  if (!(region.x0 < region.x1 && region.y0 < region.y1)) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("degenerate rectangle {}", describe(region)));
  }
  // Tighten the tolerance until the count is unambiguous and repeatable.
  double tol = options.quad_tol;
  ZeroCount current = integrate_once(f, region, options, tol);
  if (current.residual < 0.05) return current;
  for (int pass = 1; pass <= options.max_refinements; ++pass) {
    tol *= 1e-2;
    ZeroCount next = integrate_once(f, region, options, tol);
    if (next.residual < 0.25 && next.count == current.count) return next;
    current = next;
  }
  throw Error(ErrorCode::NonIntegerResult,
              fmt::format("argument-principle integral over {} is {:.6f}{:+.6f}i, not an integer",
                          describe(region), current.integral.real(), current.integral.imag()));
}

ZeroCount count_zeros(const ZetaSeries& series, const Rectangle& region,
                      const CountOptions& options) {
  return count_zeros(as_function(series), region, options);
}

std::vector<ZeroBox> locate_zeros(const AnalyticFunction& f, const Rectangle& region,
                                  double resolution, const CountOptions& options) {
  const int total = count_zeros(f, region, options).count;
  return locate_recursive(f, region, total, resolution, options);
}

std::vector<ZeroBox> locate_zeros(const ZetaSeries& series, const Rectangle& region,
                                  double resolution, const CountOptions& options) {
  return locate_zeros(as_function(series), region, resolution, options);
}

std::optional<double> density_statistic(int count, double y) {
  if (count <= 0 || !(y > 1.0)) return std::nullopt;
  return std::log(static_cast<double>(count)) / std::log(y) - 1.0;
}

std::vector<DensityRow> density_grid(const ZetaSeries& series, double x0, double y_max,
                                     int samples, const DensityOptions& options) {
  if (samples < 1 || !(y_max > options.y_min) || !(x0 < options.x1) ||
      !(options.y0 < 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "density grid needs samples >= 1, y_max > y_min, y0 < 0");
  }
  std::vector<double> ys(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = samples == 1 ? 1.0 : static_cast<double>(k) / (samples - 1);
    ys[static_cast<std::size_t>(k)] = options.y_min * std::pow(y_max / options.y_min, t);
  }

  // Strip k covers [ys[k-1], ys[k]]; strip 0 starts at y0. The extra last
  // slot is the conjugation-symmetric box [y0, -y0] holding the real zeros.
  const auto strips = static_cast<std::size_t>(samples);
  std::vector<int> strip_counts(strips + 1, 0);
  parallel_for(strips + 1, options.threads, [&](std::size_t k) {
    Rectangle r{x0, options.x1, 0.0, 0.0};
    if (k == strips) {
      r.y0 = options.y0;
      r.y1 = -options.y0;
    } else {
      r.y0 = k == 0 ? options.y0 : ys[k - 1];
      r.y1 = ys[k];
    }
    strip_counts[k] = count_zeros(series, r, options.count).count;
  });

  std::vector<DensityRow> rows(strips);
  int cumulative = 0;
  const int central = strip_counts[strips];
  for (std::size_t k = 0; k < strips; ++k) {
    cumulative += strip_counts[k];
    DensityRow& row = rows[k];
    row.y = ys[k];
    row.count = cumulative;
    row.statistic = density_statistic(row.count, row.y);
    row.symmetric_count = 2 * cumulative - central;
    row.symmetric_statistic = density_statistic(row.symmetric_count, row.y);
  }
  return rows;
}

std::optional<double> logz_statistic(double abs_z, double abs_s) {
  if (!(abs_z > 1.0) || !(abs_s > 1.0) || !std::isfinite(abs_z)) return std::nullopt;
  return std::log(std::log(abs_z)) / std::log(abs_s);
}

std::vector<LogZSample> logz_grid(const ZetaSeries& series, const Rectangle& region, int samples,
                                  int threads) {
  if (samples < 1) throw Error(ErrorCode::InvalidConfig, "logz grid needs samples >= 1");
  constexpr double kGolden = 0.6180339887498949;
  std::vector<LogZSample> out(static_cast<std::size_t>(samples));
  parallel_for(out.size(), threads, [&](std::size_t k) {
    const double fx = std::fmod(kGolden * static_cast<double>(k + 1), 1.0);
    const double fy = (static_cast<double>(k) + 0.5) / samples;
    const complex s{region.x0 + fx * region.width(), region.y0 + fy * region.height()};
    LogZSample& sample = out[k];
    sample.s = s;
    sample.abs_z = std::abs(series.evaluate(s).z);
    sample.statistic = logz_statistic(sample.abs_z, std::abs(s));
  });
  return out;
}

}  // namespace szeta
