#include "szeta/orbits.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "szeta/error.hpp"
#include "szeta/parallel.hpp"

namespace szeta {

namespace {

std::array<double, 2> random_unit_vector(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Raw 53-bit mantissa mapping keeps the start vector identical across
  // standard library implementations.
  auto draw = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  double x = draw();
  double y = draw();
  const double nrm = std::hypot(x, y);
  if (nrm == 0.0) return {1.0, 0.0};
  return {x / nrm, y / nrm};
}

bool try_power_iterate(std::span<const Mat2> factors, const PowerOptions& options,
                       std::uint64_t seed, PowerResult& result) {
  std::array<double, 2> v = random_unit_vector(seed);
  double previous_increment = 0.0;
  for (int cycle = 1; cycle <= options.max_cycles; ++cycle) {
    const std::array<double, 2> start = v;
    double increment = 0.0;
    for (const Mat2& a : factors) {
      const double x = a.a * v[0] + a.b * v[1];
      const double y = a.c * v[0] + a.d * v[1];
      const double nrm = std::hypot(x, y);
      if (nrm == 0.0 || !std::isfinite(nrm)) return false;
      increment += std::log(nrm);
      v = {x / nrm, y / nrm};
    }
    // The eigenvalue settles twice as fast as the direction; wait for both.
    const double turn = std::abs(v[0] * start[1] - v[1] * start[0]);
    if (cycle >= 2 &&
        std::abs(increment - previous_increment) <= options.tol * std::max(1.0, std::abs(increment)) &&
        turn <= std::max(options.tol, 1e-15)) {
      result.log_abs_lambda = increment;
      result.lambda_sign = (v[0] * start[0] + v[1] * start[1]) < 0.0 ? -1 : 1;
      result.eigenvector = v;
      result.cycles = cycle;
      return true;
    }
    previous_increment = increment;
  }
  return false;
}

double log_abs_det(std::span<const Symbol> word, std::span<const BoundaryMap> maps, int& sign) {
  double log_det = 0.0;
  sign = 1;
  for (Symbol s : word) {
    const double det = maps[s].matrix.det();
    if (det < 0.0) sign = -sign;
    log_det += std::log(std::abs(det));
  }
  return log_det;
}

OrbitScalars finish(std::span<const Symbol> word, double log_det, int det_sign,
                    double log_abs_lambda, double x_fix) {
  OrbitScalars out;
  out.n = static_cast<int>(word.size());
  out.multiplicity = 1;
  out.primitive_period = static_cast<int>(primitive_decomposition(word).first.size());
  out.u = log_det - 2.0 * log_abs_lambda;
  out.m = det_sign * std::exp(out.u);
  out.x_fix = x_fix;
  if (!(out.u < 0.0)) {
    throw Error(ErrorCode::NotContracting,
                fmt::format("orbit {} has ln|multiplier| = {} >= 0", to_string(word), out.u));
  }
  return out;
}

void check_word(std::span<const Symbol> word, std::span<const BoundaryMap> maps) {
  if (word.empty()) throw Error(ErrorCode::InvalidConfig, "empty orbit word");
  for (Symbol s : word) {
    if (s >= maps.size()) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("symbol {} out of range for {} generators", int(s), maps.size()));
    }
  }
}

}  // namespace

PowerResult power_iterate(std::span<const Mat2> factors, const PowerOptions& options) {
  PowerResult result;
  if (try_power_iterate(factors, options, options.seed, result)) return result;
  // One restart from a fresh start vector before giving up.
  if (try_power_iterate(factors, options, options.seed ^ 0x9e3779b97f4a7c15ULL, result)) {
    return result;
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("power iteration did not settle within {} cycles", options.max_cycles));
}

OrbitScalars multiplier(std::span<const Symbol> word, std::span<const BoundaryMap> maps,
                        const PowerOptions& options) {
  check_word(word, maps);
  std::vector<Mat2> factors;
  factors.reserve(word.size());
  for (Symbol s : word) factors.push_back(maps[s].matrix);

  PowerResult power;
  try {
    power = power_iterate(factors, options);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("orbit {}: {}", to_string(word), e.what()));
  }
  int det_sign = 1;
  const double log_det = log_abs_det(word, maps, det_sign);
  const double x_fix = power.eigenvector[0] / power.eigenvector[1];
  return finish(word, log_det, det_sign, power.log_abs_lambda, x_fix);
}

OrbitScalars multiplier_analytic(std::span<const Symbol> word, std::span<const BoundaryMap> maps) {
  check_word(word, maps);
  Mat2 product;
  double log_scale = 0.0;
  for (Symbol s : word) {
    product = maps[s].matrix * product;
    const double scale = std::max({std::abs(product.a), std::abs(product.b),
                                   std::abs(product.c), std::abs(product.d)});
    product = {product.a / scale, product.b / scale, product.c / scale, product.d / scale};
    log_scale += std::log(scale);
  }
  int det_sign = 1;
  const double log_det = log_abs_det(word, maps, det_sign);
  const double t = product.trace();
  const double scaled_det = det_sign * std::exp(log_det - 2.0 * log_scale);
  const double disc = t * t - 4.0 * scaled_det;
  if (!(disc > 0.0)) {
    throw Error(ErrorCode::NoConvergence,
                fmt::format("orbit {}: product has no dominant real eigenvalue", to_string(word)));
  }
  const double lambda = std::copysign(0.5 * (std::abs(t) + std::sqrt(disc)), t);

  // Dominant eigenvector (x, 1) from whichever row is better conditioned.
  const double den_top = lambda - product.a;
  const double den_bottom = product.c;
  const double x_fix = std::abs(den_top) >= std::abs(den_bottom) ? product.b / den_top
                                                                 : (lambda - product.d) / den_bottom;
  return finish(word, log_det, det_sign, log_scale + std::log(std::abs(lambda)), x_fix);
}

double apply_word(std::span<const Symbol> word, std::span<const BoundaryMap> maps, double x) {
  for (Symbol s : word) x = maps[s].apply(x);
  return x;
}

std::size_t OrbitTable::class_count() const {
  std::size_t total = 0;
  for (const auto& row : by_length) total += row.size();
  return total;
}

OrbitTable build_orbit_table(const GroupConfig& config, int max_length, int threads,
                             const PowerOptions& options) {
  if (max_length < 1 || max_length > kMaxTruncation) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("truncation order {} outside [1, {}]", max_length, kMaxTruncation));
  }
  const auto maps = maps_of(to_boundary_maps(config));
  const int alphabet = static_cast<int>(config.size());

  OrbitTable table;
  table.max_length = max_length;
  table.alphabet = alphabet;
  table.fingerprint = fingerprint(config);
  table.by_length.resize(static_cast<std::size_t>(max_length) + 1);
  table.representatives.resize(static_cast<std::size_t>(max_length) + 1);

  for (int n = 1; n <= max_length; ++n) {
    auto classes = enumerate_orbit_classes(alphabet, n);
    auto& row = table.by_length[static_cast<std::size_t>(n)];
    row.resize(classes.size());
    parallel_for(classes.size(), threads, [&](std::size_t i) {
      const auto& cls = classes[i];
      OrbitScalars scalars = multiplier(cls.representative, maps, options);
      scalars.multiplicity = cls.rotation_count;
      scalars.primitive_period = cls.primitive_period;
      row[i] = scalars;
    });
    auto& reps = table.representatives[static_cast<std::size_t>(n)];
    reps.reserve(classes.size());
    for (auto& cls : classes) reps.push_back(std::move(cls.representative));
  }
  return table;
}

}  // namespace szeta
