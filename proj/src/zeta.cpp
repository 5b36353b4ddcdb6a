#include "szeta/zeta.hpp"

#include <cmath>

#include <fmt/format.h>

#include "szeta/error.hpp"

namespace szeta {

namespace {

// Extended precision for the polynomial algebra: the B_{N,r} terms can exceed
// |Z| by many orders of magnitude left of the critical line.
using wide = ZetaSeries::wide;

// y * u mod 2 pi with y * u held exactly as hi + lo and 2 pi split in two doubles.
double reduce_phase(double y, double u) {
  constexpr double kTwoPiHi = 6.283185307179586232;
  constexpr double kTwoPiLo = 2.4492935982947064e-16;
  const double hi = y * u;
  const double lo = std::fma(y, u, -hi);
  const double k = std::nearbyint(hi / kTwoPiHi);
  return (std::fma(-k, kTwoPiHi, hi) - k * kTwoPiLo) + lo;
}

complex narrow(wide w) {
  return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

}  // namespace

std::string_view mode_name(ZetaMode mode) {
  return mode == ZetaMode::Conformal ? "conformal" : "selberg";
}

ZetaMode parse_mode(std::string_view text) {
  if (text == "conformal") return ZetaMode::Conformal;
  if (text == "selberg") return ZetaMode::Selberg;
  throw Error(ErrorCode::ParseError, fmt::format("unknown zeta mode '{}'", text));
}

ZetaSeries::ZetaSeries(std::shared_ptr<const OrbitTable> table, int order, ZetaMode mode,
                       Precision precision)
    : table_(std::move(table)), order_(order), mode_(mode), precision_(precision) {
  if (!table_) throw Error(ErrorCode::InvalidConfig, "zeta series needs an orbit table");
  if (order < 1 || order > table_->max_length) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("truncation order {} outside [1, {}]", order, table_->max_length));
  }
  exponents_.resize(static_cast<std::size_t>(order) + 1);
  weights_.resize(static_cast<std::size_t>(order) + 1);
  for (int n = 1; n <= order; ++n) {
    const auto& row = table_->by_length[static_cast<std::size_t>(n)];
    auto& us = exponents_[static_cast<std::size_t>(n)];
    auto& ws = weights_[static_cast<std::size_t>(n)];
    us.reserve(row.size());
    ws.reserve(row.size());
    for (const auto& o : row) {
      us.push_back(o.u);
      // (1-m)^2 = |1-m|^2 for the real signed multiplier.
      ws.push_back(o.multiplicity / (n * (1.0 - o.m) * (1.0 - o.m)));
    }
  }
}

void ZetaSeries::coefficients(complex s, int order, std::vector<wide>& a,
                              std::vector<wide>& da) const {
  a.assign(static_cast<std::size_t>(order) + 1, 0.0L);
  da.assign(static_cast<std::size_t>(order) + 1, 0.0L);
  const double sr = s.real();
  const double si = s.imag();
  for (int n = 1; n <= order; ++n) {
    if (mode_ == ZetaMode::Selberg && n % 2 != 0) continue;
    long double re = 0.0L, im = 0.0L, dre = 0.0L, dim = 0.0L;
    const auto& us = exponents_[static_cast<std::size_t>(n)];
    const auto& ws = weights_[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double u = us[i];
      long double tr, ti;
      if (precision_ == Precision::Extended) {
        const long double mag = ws[i] * std::exp(static_cast<long double>(sr) * u);
        const long double phase = static_cast<long double>(si) * u;
        tr = mag * std::cos(phase);
        ti = mag * std::sin(phase);
      } else {
        const double mag = ws[i] * std::exp(sr * u);
        const double reduced = reduce_phase(si, u);
        tr = mag * std::cos(reduced);
        ti = mag * std::sin(reduced);
      }
      re += tr;
      im += ti;
      dre += u * tr;
      dim += u * ti;
    }
    const long double scale = mode_ == ZetaMode::Selberg ? 2.0L : 1.0L;
    a[static_cast<std::size_t>(n)] = {scale * re, scale * im};
    da[static_cast<std::size_t>(n)] = {scale * dre, scale * dim};
  }
}

complex ZetaSeries::a_n(int n, complex s) const { return a_n_with_derivative(n, s).first; }

std::pair<complex, complex> ZetaSeries::a_n_with_derivative(int n, complex s) const {
  if (n < 1 || n > order_) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("a_n index {} outside [1, {}]", n, order_));
  }
  std::vector<wide> a, da;
  coefficients(s, n, a, da);
  return {narrow(a.back()), narrow(da.back())};
}

ZetaValue ZetaSeries::evaluate(complex s) const { return evaluate(s, order_); }

ZetaValue ZetaSeries::evaluate(complex s, int order) const {
  return evaluate_all_orders(s, order).back();
}

std::vector<ZetaValue> ZetaSeries::evaluate_all_orders(complex s, int order) const {
  if (order < 0 || order > order_) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("evaluation order {} outside [0, {}]", order, order_));
  }
  const auto size = static_cast<std::size_t>(order) + 1;
  std::vector<wide> wa, wda;
  coefficients(s, order, wa, wda);

  // b[N][r], N = 0..order, r = 0..N; b[0][0] = 1 only enters through r = 1.
  std::vector<std::vector<wide>> b(size), db(size);
  for (std::size_t N = 0; N < size; ++N) {
    b[N].assign(N + 1, 0.0L);
    db[N].assign(N + 1, 0.0L);
  }

  std::vector<ZetaValue> out(size);
  wide z = 1.0L;
  wide dz = 0.0L;
  out[0] = {s, narrow(z), narrow(dz)};
  for (std::size_t N = 1; N < size; ++N) {
    b[N][1] = -wa[N];
    db[N][1] = -wda[N];
    for (std::size_t r = 2; r <= N; ++r) {
      wide sum = 0.0L;
      wide dsum = 0.0L;
      for (std::size_t n = 1; n + r - 1 <= N; ++n) {
        const auto& prev = b[N - n][r - 1];
        sum += prev * wa[n];
        dsum += db[N - n][r - 1] * wa[n] + prev * wda[n];
      }
      b[N][r] = -sum / static_cast<long double>(r);
      db[N][r] = -dsum / static_cast<long double>(r);
    }
    for (std::size_t r = 1; r <= N; ++r) {
      z += b[N][r];
      dz += db[N][r];
    }
    out[N] = {s, narrow(z), narrow(dz)};
  }
  return out;
}

complex evaluate_exp_oracle(const ZetaSeries& series, complex s) {
  const int order = series.order();
  const auto size = static_cast<std::size_t>(order) + 1;
  std::vector<wide> a, da;
  series.coefficients(s, order, a, da);
  std::vector<wide> poly(size, 0.0L);
  poly[0] = 1.0L;
  for (int n = 1; n <= order; ++n) {
    const wide an = a[static_cast<std::size_t>(n)];
    // exp(-a_n t^n) truncated: sum_j (-a_n)^j / j! t^{nj}
    std::vector<wide> factor(size, 0.0L);
    wide term = 1.0L;
    for (int j = 0; n * j <= order; ++j) {
      if (j > 0) term *= -an / static_cast<long double>(j);
      factor[static_cast<std::size_t>(n * j)] = term;
    }
    std::vector<wide> next(size, 0.0L);
    for (std::size_t i = 0; i < size; ++i) {
      if (poly[i] == 0.0L) continue;
      for (std::size_t k = 0; i + k < size; ++k) next[i + k] += poly[i] * factor[k];
    }
    poly = std::move(next);
  }
  wide total = 0.0L;
  for (const auto& c : poly) total += c;
  return narrow(total);
}

namespace {

struct PrimitiveFactor {
  int length = 0;
  // coeff[j] multiplies t^{length * j}; coeff[0] = 1 is implicit.
  std::vector<wide> coeff;
};

void enumerate_sets(const std::vector<PrimitiveFactor>& factors, std::size_t start, int budget,
                    wide product, wide& total) {
  for (std::size_t i = start; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.length > budget) continue;
    for (std::size_t j = 1; j < f.coeff.size() && f.length * static_cast<int>(j) <= budget; ++j) {
      if (f.coeff[j] == 0.0L) continue;
      const wide next = product * f.coeff[j];
      total += next;
      enumerate_sets(factors, i + 1, budget - f.length * static_cast<int>(j), next, total);
    }
  }
}

}  // namespace

complex evaluate_pr_oracle(const ZetaSeries& series, complex s, int order,
                           PrimitiveWeights weights) {
  if (order < 1 || order > series.order()) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("oracle order {} outside [1, {}]", order, series.order()));
  }
  const OrbitTable& table = series.table();
  const bool selberg = series.mode() == ZetaMode::Selberg;

  std::vector<PrimitiveFactor> factors;
  for (int q = 1; q <= order; ++q) {
    for (const auto& o : table.by_length[static_cast<std::size_t>(q)]) {
      if (o.primitive_period != q) continue;
      const int reps = order / q;
      // log-factor: sum_k ell_k x^k with x = t^q.
      std::vector<wide> ell(static_cast<std::size_t>(reps) + 1, 0.0L);
      for (int k = 1; k <= reps; ++k) {
        if (selberg && (q * k) % 2 != 0) continue;
        const long double mk = std::pow(static_cast<long double>(o.m), k);
        const wide w = std::exp(wide(s) * static_cast<long double>(k * o.u)) / ((1.0L - mk) * (1.0L - mk));
        ell[static_cast<std::size_t>(k)] = (selberg ? 2.0L : 1.0L) * w / static_cast<long double>(k);
      }
      PrimitiveFactor f;
      f.length = q;
      f.coeff.assign(static_cast<std::size_t>(reps) + 1, 0.0L);
      f.coeff[0] = 1.0L;
      if (weights == PrimitiveWeights::Literal) {
        if (selberg) {
          // Lowest admissible power only.
          for (std::size_t k = 1; k < ell.size(); ++k) {
            if (ell[k] != 0.0L) {
              f.coeff[k] = -ell[k] * static_cast<long double>(k);
              break;
            }
          }
        } else {
          f.coeff[1] = -ell[1];
        }
      } else {
        // exp(-sum ell_k x^k): g_j = -(1/j) sum_k k ell_k g_{j-k}
        for (std::size_t j = 1; j < f.coeff.size(); ++j) {
          wide acc = 0.0L;
          for (std::size_t k = 1; k <= j; ++k) {
            acc += static_cast<long double>(k) * ell[k] * f.coeff[j - k];
          }
          f.coeff[j] = -acc / static_cast<long double>(j);
        }
      }
      factors.push_back(std::move(f));
    }
  }

  wide total = 1.0L;
  enumerate_sets(factors, 0, order, 1.0L, total);
  return narrow(total);
}

ErrorMetric error_metric(const ZetaSeries& series, complex s, int m1, int m2) {
  const int top = std::max(m1, m2);
  if (std::min(m1, m2) < 1 || top > series.order()) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("error metric orders ({}, {}) outside [1, {}]", m1, m2, series.order()));
  }
  const auto values = series.evaluate_all_orders(s, top);
  const auto& v1 = values[static_cast<std::size_t>(m1)];
  const auto& v2 = values[static_cast<std::size_t>(m2)];
  if (std::abs(v1.z) == 0.0 || std::abs(v2.z) == 0.0) {
    throw Error(ErrorCode::ZeroDenominator,
                fmt::format("Z vanishes at s = {}{:+}i", s.real(), s.imag()));
  }
  const complex r1 = v1.dz / v1.z;
  const complex r2 = v2.dz / v2.z;
  return {std::abs(r1 - r2) / (1.0 + std::abs(r1) + std::abs(r2)), m1, m2};
}

}  // namespace szeta
