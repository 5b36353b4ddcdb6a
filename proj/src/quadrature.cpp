#include "szeta/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "szeta/error.hpp"

namespace szeta {

namespace {

GaussRule make_rule(int order) {
  // Newton on P_n from the Chebyshev-like initial guesses.
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 2) throw Error(ErrorCode::InvalidConfig, "Gauss-Legendre order must be >= 2");
  static std::mutex mutex;
  static std::map<int, GaussRule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(order);
  if (it == rules.end()) it = rules.emplace(order, make_rule(order)).first;
  return it->second;
}

LineIntegral integrate_segment(const std::function<std::complex<double>(std::complex<double>)>& f,
                               std::complex<double> a, std::complex<double> b,
                               const LineIntegralOptions& options) {
  const GaussRule& rule = gauss_legendre(options.order);
  const std::complex<double> direction = b - a;
  const double length = std::abs(direction);

  // Integral over parameter interval [t0, t1] of f(a + t (b - a)) (b - a) dt.
  auto panel = [&](double t0, double t1) {
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      sum += rule.weights[k] * f(a + (mid + half * rule.nodes[k]) * direction);
    }
    return sum * half * direction;
  };

  struct Pending {
    double t0, t1;
    std::complex<double> estimate;
  };

  LineIntegral result;
  result.value = 0.0;
  const int initial = std::max(1, static_cast<int>(std::ceil(length / options.initial_panel)));
  const double min_width = options.min_panel_fraction;

  std::vector<Pending> stack;
  // Pushed in reverse so panels are accepted left to right (fixed summation
  // order keeps results bitwise reproducible).
  for (int k = initial - 1; k >= 0; --k) {
    const double t0 = static_cast<double>(k) / initial;
    const double t1 = static_cast<double>(k + 1) / initial;
    stack.push_back({t0, t1, panel(t0, t1)});
  }
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.t0 + p.t1);
    const std::complex<double> left = panel(p.t0, mid);
    const std::complex<double> right = panel(mid, p.t1);
    const std::complex<double> refined = left + right;
    const bool too_small = (p.t1 - p.t0) < min_width;
    if (std::abs(refined - p.estimate) <= options.tol || too_small ||
        result.panels + stack.size() >= options.max_panels) {
      if (too_small || result.panels + stack.size() >= options.max_panels) result.resolved = false;
      result.value += refined;
      result.panels += 2;
      continue;
    }
    stack.push_back({mid, p.t1, right});
    stack.push_back({p.t0, mid, left});
  }
  return result;
}

}  // namespace szeta
