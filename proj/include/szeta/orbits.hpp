#pragma once

// Per-orbit invariants of the composed boundary maps.
//
// For an admissible word w = (w_1, ..., w_n) the orbit map is
// phi_w = phi_{w_n} o ... o phi_{w_1}, represented by the matrix product
// A_{w_n} ... A_{w_1}. Its multiplier at the attracting fixed point is
// lambda_-/lambda_+ = det / lambda_+^2, so with |det A_i| = 1 only the
// dominant eigenvalue is needed.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "szeta/geometry.hpp"
#include "szeta/symbolic.hpp"

namespace szeta {

struct OrbitScalars {
  int n = 0;
  int multiplicity = 0;      // rotation count of the class
  int primitive_period = 0;
  double u = 0.0;            // ln|multiplier|, strictly negative
  double m = 0.0;            // signed multiplier, sign (-1)^n
  double x_fix = 0.0;        // attracting fixed point on the real line

  bool operator==(const OrbitScalars&) const = default;
};

struct PowerOptions {
  double tol = 1e-14;
  int max_cycles = 200;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct PowerResult {
  double log_abs_lambda = 0.0;  // ln|lambda_+| of the full product
  int lambda_sign = 1;
  std::array<double, 2> eigenvector{1.0, 0.0};
  int cycles = 0;
};

// Power iteration on the product factors.back() * ... * factors.front(),
// applied factor by factor with renormalization; the product itself is never
// formed. Throws NoConvergence.
PowerResult power_iterate(std::span<const Mat2> factors, const PowerOptions& options = {});

OrbitScalars multiplier(std::span<const Symbol> word, std::span<const BoundaryMap> maps,
                        const PowerOptions& options = {});

// Same contract via trace/determinant of a rescaled explicit product.
OrbitScalars multiplier_analytic(std::span<const Symbol> word, std::span<const BoundaryMap> maps);

// Applies phi_w to x directly, one fractional-linear step at a time.
double apply_word(std::span<const Symbol> word, std::span<const BoundaryMap> maps, double x);

struct OrbitTable {
  int max_length = 0;
  int alphabet = 0;
  std::uint64_t fingerprint = 0;
  // Index n holds the classes of length n (index 0 unused), ordered by
  // representative.
  std::vector<std::vector<OrbitScalars>> by_length;
  std::vector<std::vector<Word>> representatives;

  std::size_t class_count() const;
  bool operator==(const OrbitTable&) const = default;
};

inline constexpr int kMaxTruncation = 24;

OrbitTable build_orbit_table(const GroupConfig& config, int max_length, int threads = 1,
                             const PowerOptions& options = {});

// Versioned text cache with hex-float payload (bit-exact reload).
inline constexpr int kOrbitCacheVersion = 1;
void save_orbit_table(const OrbitTable& table, const std::filesystem::path& path);
OrbitTable load_orbit_table(const std::filesystem::path& path);

// Loads the cache when it matches the configuration and order; otherwise
// rebuilds and rewrites it.
OrbitTable cached_orbit_table(const GroupConfig& config, int max_length,
                              const std::filesystem::path& path, int threads = 1,
                              const PowerOptions& options = {});

}  // namespace szeta
