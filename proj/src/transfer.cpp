#include "szeta/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "szeta/error.hpp"

namespace szeta {

namespace {

std::vector<Word> admissible_words(int alphabet, int depth) {
  std::vector<Word> words{{}};
  for (int level = 0; level < depth; ++level) {
    std::vector<Word> next;
    for (const auto& w : words) {
      for (int k = 0; k < alphabet; ++k) {
        if (!w.empty() && w.back() == k) continue;
        Word extended = w;
        extended.push_back(static_cast<Symbol>(k));
        next.push_back(std::move(extended));
      }
    }
    words = std::move(next);
  }
  return words;
}

template <typename Scalar>
void add_interpolation_row(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                           Eigen::Index row, Eigen::Index col0, const std::vector<double>& nodes,
                           const std::vector<double>& bary, double y, Scalar weight) {
  const auto n = nodes.size();
  for (std::size_t b = 0; b < n; ++b) {
    if (y == nodes[b]) {
      a(row, col0 + static_cast<Eigen::Index>(b)) += weight;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t b = 0; b < n; ++b) denom += bary[b] / (y - nodes[b]);
  for (std::size_t b = 0; b < n; ++b) {
    a(row, col0 + static_cast<Eigen::Index>(b)) += weight * (bary[b] / (y - nodes[b]) / denom);
  }
}

}  // namespace

CollocationOperator::CollocationOperator(const GroupConfig& config, CollocationOptions options)
    : options_(options) {
  if (options.degree < 1 || options.refinement < 1 || options.refinement > 8) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("collocation degree {} / refinement {} out of range", options.degree,
                            options.refinement));
  }
  const auto generators = to_boundary_maps(config);
  const int alphabet = static_cast<int>(generators.size());
  const auto words = admissible_words(alphabet, options.refinement);

  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);

  const int K = options.degree;
  bary_weights_.resize(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    bary_weights_[static_cast<std::size_t>(j)] = (j == 0 || j == K) ? 0.5 * sign : sign;
  }

  for (const auto& w : words) {
    // Cylinder phi_{w0} o ... o phi_{w_{d-2}} (I_{w_{d-1}}), a subset of I_{w0}.
    const auto& base = generators[w.back()].interval;
    double lo = base.lo;
    double hi = base.hi;
    for (std::size_t k = w.size() - 1; k-- > 0;) {
      const auto& map = generators[w[k]].map;
      const double a = map.apply(lo);
      const double b = map.apply(hi);
      lo = std::min(a, b);
      hi = std::max(a, b);
    }
    cells_.push_back({lo, hi, w.front()});

    std::vector<double> pts(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) {
      pts[static_cast<std::size_t>(j)] =
          0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(std::numbers::pi * j / K);
    }
    nodes_.push_back(std::move(pts));

    std::vector<Branch> out;
    for (int k = 0; k < alphabet; ++k) {
      if (k == w.front()) continue;
      Word target;
      target.push_back(static_cast<Symbol>(k));
      target.insert(target.end(), w.begin(), w.end() - 1);
      out.push_back({index.at(target), generators[static_cast<std::size_t>(k)].map});
    }
    branches_.push_back(std::move(out));
  }
}

std::size_t CollocationOperator::dimension() const {
  return cells_.size() * (static_cast<std::size_t>(options_.degree) + 1);
}

template <typename Scalar, typename Power>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> CollocationOperator::assemble(
    Power power) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  const auto per_cell = static_cast<Eigen::Index>(options_.degree) + 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (std::size_t j = 0; j < nodes_[c].size(); ++j) {
      const double x = nodes_[c][j];
      const auto row = static_cast<Eigen::Index>(c) * per_cell + static_cast<Eigen::Index>(j);
      for (const auto& br : branches_[c]) {
        const double y = br.map.apply(x);
        const Scalar weight = power(std::log(std::abs(br.map.derivative(x))));
        add_interpolation_row<Scalar>(a, row, static_cast<Eigen::Index>(br.target) * per_cell,
                                      nodes_[br.target], bary_weights_, y, weight);
      }
    }
  }
  return a;
}

Eigen::MatrixXd CollocationOperator::matrix(double s) const {
  return assemble<double>([s](double log_deriv) { return std::exp(s * log_deriv); });
}

Eigen::MatrixXcd CollocationOperator::matrix(complex s) const {
  return assemble<complex>([s](double log_deriv) { return std::exp(s * log_deriv); });
}

double CollocationOperator::contraction_margin() const {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (const auto& br : branches_[c]) {
      const double a = br.map.apply(cells_[c].lo);
      const double b = br.map.apply(cells_[c].hi);
      const auto& target = cells_[br.target];
      const double inner = std::min(std::min(a, b) - target.lo, target.hi - std::max(a, b));
      margin = std::min(margin, inner / target.width());
    }
  }
  return margin;
}

LeadingEigen leading_eigenvalue(const CollocationOperator& op, double s, double tol,
                                int max_iterations) {
  const Eigen::MatrixXd a = op.matrix(s);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows()).normalized();
  LeadingEigen out;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    const Eigen::VectorXd w = a * v;
    const double lambda = v.dot(w);
    const double residual = (w - lambda * v).norm();
    if (residual <= tol * std::abs(lambda)) {
      out.eigenvalue = lambda;
      out.residual = residual;
      out.eigenvector = v.sum() < 0.0 ? Eigen::VectorXd(-v) : v;
      out.iterations = iter;
      return out;
    }
    const double nrm = w.norm();
    if (nrm == 0.0 || !std::isfinite(nrm)) break;
    v = w / nrm;
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("transfer-operator power iteration stalled at s = {}", s));
}

BowenResult bowen_dimension(const CollocationOperator& op, double tol) {
  auto log_lambda = [&op](double s) { return std::log(leading_eigenvalue(op, s).eigenvalue); };

  double lo = 0.0;
  double hi = 1.0;
  double g_lo = log_lambda(lo);
  double g_hi = log_lambda(hi);
  if (!(g_lo > 0.0)) {
    throw Error(ErrorCode::BracketFailure, "leading eigenvalue at s = 0 is not above 1");
  }
  if (!(g_hi < 0.0)) {
    throw Error(ErrorCode::BracketFailure, "leading eigenvalue at s = 1 is not below 1");
  }

  BowenResult out;
  out.degree = op.degree();
  out.refinement = op.refinement();
  int iterations = 0;
  while (hi - lo > 0.02) {
    const double mid = 0.5 * (lo + hi);
    const double g = log_lambda(mid);
    ++iterations;
    if (g > 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
    }
  }

  // Secant through the two latest iterates; falls back to bisection when the
  // step leaves the bracket.
  double x_prev = lo, g_prev = g_lo;
  double x = hi, g = g_hi;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(std::expm1(g)) < tol || hi - lo < 1e-15) break;
    double next = x - g * (x - x_prev) / (g - g_prev);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x_prev = x;
    g_prev = g;
    x = next;
    g = log_lambda(x);
    ++iterations;
    if (g > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  out.delta = x;
  out.eigen_residual = std::abs(std::expm1(g));
  out.iterations = iterations;
  return out;
}

std::vector<double> singular_value_profile(const CollocationOperator& op, complex s) {
  const Eigen::MatrixXcd a = op.matrix(s);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

GeometricFit fit_geometric_decay(const std::vector<double>& profile, std::size_t burn_in,
                                 double floor) {
  GeometricFit fit;
  if (profile.empty() || !(profile.front() > 0.0)) return fit;
  std::size_t last = burn_in;
  while (last + 1 < profile.size() && profile[last + 1] > floor * profile.front()) ++last;
  fit.first = burn_in;
  fit.last = last;
  if (last <= burn_in + 1) return fit;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(last - burn_in + 1);
  for (std::size_t l = burn_in; l <= last; ++l) {
    const double x = static_cast<double>(l);
    const double y = std::log(profile[l]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double cov = sxy - sx * sy / n;
  const double var_x = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  const double slope = cov / var_x;
  fit.ratio = std::exp(slope);
  fit.r_squared = var_y > 0.0 ? cov * cov / (var_x * var_y) : 1.0;
  return fit;
}

complex fredholm_determinant(const CollocationOperator& op, complex s) {
  const Eigen::MatrixXcd a = op.matrix(s);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  return (id - a).partialPivLu().determinant();
}

}  // namespace szeta
