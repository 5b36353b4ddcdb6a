#pragma once

// Finite-rank collocation model of the transfer operator
//
//   (L_s u)(x) = sum_{k != owner(x)} |phi_k'(x)|^s u(phi_k(x)),
//
// acting on functions on the union of the boundary intervals. Each interval
// is cut into the cylinder sets of a fixed depth and functions are
// represented by their values at Chebyshev points of every cylinder.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "szeta/geometry.hpp"
#include "szeta/symbolic.hpp"

namespace szeta {

struct CollocationOptions {
  int degree = 32;      // Chebyshev degree K per cylinder (K+1 nodes)
  int refinement = 2;   // cylinder depth; 1 = the generator intervals themselves
};

class CollocationOperator {
 public:
  CollocationOperator(const GroupConfig& config, CollocationOptions options = {});

  int degree() const { return options_.degree; }
  int refinement() const { return options_.refinement; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t dimension() const;

  const std::vector<BoundaryInterval>& cells() const { return cells_; }
  const std::vector<double>& nodes(std::size_t cell) const { return nodes_[cell]; }

  Eigen::MatrixXd matrix(double s) const;
  Eigen::MatrixXcd matrix(complex s) const;

  // Smallest distance from a branch image to the boundary of its target
  // cell, relative to the cell width; positive when every branch maps its
  // cylinder strictly inside the target.
  double contraction_margin() const;

 private:
  struct Branch {
    std::size_t target;
    BoundaryMap map;
  };

  template <typename Scalar, typename Power>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> assemble(Power power) const;

  CollocationOptions options_;
  std::vector<BoundaryInterval> cells_;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<Branch>> branches_;
  std::vector<double> bary_weights_;
};

struct LeadingEigen {
  double eigenvalue = 0.0;
  double residual = 0.0;
  Eigen::VectorXd eigenvector;
  int iterations = 0;
};

// Power iteration; throws NoConvergence.
LeadingEigen leading_eigenvalue(const CollocationOperator& op, double s, double tol = 1e-13,
                                int max_iterations = 20000);

struct BowenResult {
  double delta = 0.0;
  int degree = 0;
  int refinement = 0;
  double eigen_residual = 0.0;  // |lambda(delta) - 1|
  int iterations = 0;
};

// Root of lambda(s) = 1 on [0, 1]: bisection on log lambda, then secant
// steps kept inside the bracket.
BowenResult bowen_dimension(const CollocationOperator& op, double tol = 1e-13);

std::vector<double> singular_value_profile(const CollocationOperator& op, complex s);

struct GeometricFit {
  double ratio = 0.0;      // exp(slope) of log mu_l against l
  double r_squared = 0.0;
  std::size_t first = 0;   // fitted index range [first, last]
  std::size_t last = 0;
};

// Least-squares line through log mu_l over the tail after `burn_in`, stopping
// where mu_l falls below `floor` * mu_0.
GeometricFit fit_geometric_decay(const std::vector<double>& profile, std::size_t burn_in,
                                 double floor = 1e-12);

// det(I - L_s) of the collocation matrix (diagnostic only).
complex fredholm_determinant(const CollocationOperator& op, complex s);

}  // namespace szeta
