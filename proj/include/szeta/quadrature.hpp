#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace szeta {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order; computed once per order and cached.
const GaussRule& gauss_legendre(int order);

struct LineIntegralOptions {
  int order = 16;
  double tol = 1e-8;            // absolute, per accepted panel
  double initial_panel = 0.5;   // max panel length before adaptation
  double min_panel_fraction = 1e-10;
  std::size_t max_panels = 4'000'000;
};

struct LineIntegral {
  std::complex<double> value;
  std::size_t panels = 0;
  bool resolved = true;  // false when a panel hit the minimum length
};

// Adaptive panel-halving integral of f along the segment a -> b.
LineIntegral integrate_segment(const std::function<std::complex<double>(std::complex<double>)>& f,
                               std::complex<double> a, std::complex<double> b,
                               const LineIntegralOptions& options = {});

}  // namespace szeta
