#pragma once

// Truncated cycle expansion of the dynamical zeta function.
//
//   a_n(s) = (1/n) sum_{|w|=n} |m_w|^s / (1 - m_w)^2
//   Z_M(s) = degree-<=M part of exp(-sum_n a_n(s) t^n), evaluated at t = 1
//
// computed by the recursion over B_{N,r}, the degree-N / r-factor terms.

#include <complex>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "szeta/orbits.hpp"

namespace szeta {

enum class ZetaMode { Conformal, Selberg };

// Arithmetic for the per-orbit terms e^{s u_w}. Sums and the recursion are in
// long double either way.
enum class Precision {
  Standard,  // double exp/sin/cos after an exact 2 pi reduction of the phase
  Extended,  // long double exp/sin/cos; about 10x slower
};

std::string_view mode_name(ZetaMode mode);
ZetaMode parse_mode(std::string_view text);

struct ZetaValue {
  complex s;
  complex z;
  complex dz;
};

class ZetaSeries {
 public:
  ZetaSeries(std::shared_ptr<const OrbitTable> table, int order, ZetaMode mode = ZetaMode::Conformal,
             Precision precision = Precision::Extended);

  int order() const { return order_; }
  ZetaMode mode() const { return mode_; }
  Precision precision() const { return precision_; }
  const OrbitTable& table() const { return *table_; }

  // Mode-adjusted coefficient: Selberg mode drops odd n and doubles even n.
  complex a_n(int n, complex s) const;
  std::pair<complex, complex> a_n_with_derivative(int n, complex s) const;

  ZetaValue evaluate(complex s) const;
  ZetaValue evaluate(complex s, int order) const;
  // Z_N and Z_N' for N = 0..order (index N), sharing one coefficient pass.
  std::vector<ZetaValue> evaluate_all_orders(complex s, int order) const;

  ZetaSeries with_order(int order) const { return ZetaSeries(table_, order, mode_, precision_); }
  ZetaSeries with_precision(Precision p) const { return ZetaSeries(table_, order_, mode_, p); }

  // a_1..a_order (index 0 unused) and their s-derivatives in extended
  // precision; the phase Im(s) u_w alone exceeds 10^3 rad on long orbits.
  using wide = std::complex<long double>;
  void coefficients(complex s, int order, std::vector<wide>& a, std::vector<wide>& da) const;

 private:

  std::shared_ptr<const OrbitTable> table_;
  int order_;
  ZetaMode mode_;
  Precision precision_;
  // Per length: u_w and multiplicity/(n (1-m_w)^2).
  std::vector<std::vector<double>> exponents_;
  std::vector<std::vector<double>> weights_;
};

// Multiplies the truncated series exp(-a_n t^n) one factor at a time.
complex evaluate_exp_oracle(const ZetaSeries& series, complex s);

enum class PrimitiveWeights {
  // Each primitive class contributes the exact factor
  // exp(-sum_k w_{p^k} t^{qk} / k); equals the cycle expansion term by term.
  RepetitionAware,
  // Each class enters at most once with coefficient -w_p, as in the
  // sum over sets of distinct primitive classes with weight products.
  Literal,
};

// Sum over sets of distinct primitive classes with total length <= order.
complex evaluate_pr_oracle(const ZetaSeries& series, complex s, int order,
                           PrimitiveWeights weights = PrimitiveWeights::RepetitionAware);

struct ErrorMetric {
  double value = 0.0;
  int m1 = 0;
  int m2 = 0;
};

// |R1 - R2| / (1 + |R1| + |R2|) with R_M = Z_M'/Z_M.
ErrorMetric error_metric(const ZetaSeries& series, complex s, int m1, int m2);

}  // namespace szeta
