#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pslset/surrogate.hpp"

namespace pslset {

/// A point of the probability simplex over the constraint columns.
struct SimplexPoint {
  Eigen::VectorXd q;

  static SimplexPoint uniform(std::size_t size);

  /// Non-negative entries summing to one within tol.
  bool valid(double tol = 1e-12) const;
};

enum class StepRule {
  inv_sqrt,  ///< gamma0 / sqrt(m + 1)
  constant,  ///< gamma0
};

struct MdaConfig {
  int max_inner_iters = 200;
  StepRule step_rule = StepRule::inv_sqrt;
  double gamma0 = 1.0;
  /// Stop once the relative change of g(q) between iterates falls below tol.
  double tol = 1e-6;
  /// Subtract the largest exponent before exponentiating.
  bool stabilize = true;
  /// Divide the step by the spread (max - min) of the subgradient, making
  /// gamma0 scale-free. The surrogate values are O(M^2 L) in magnitude, which
  /// would otherwise collapse q onto a vertex at the first step.
  bool normalize_step = true;
  /// Drop entries below 1e-12/|K| before forming the final minimizer.
  bool sparsify = false;
};

/// Minimizer of 4 x^T dtilde q + q^T p over per-element unit circles:
/// each pair (x_i, x_{i+ML}) is the normalized pair of -dtilde q, or (1, 0)
/// when that pair vanishes.
Eigen::VectorXd inner_minimize_x(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& q);
Eigen::VectorXd inner_minimize_x(const SurrogateSystem& sys, const SimplexPoint& q);

/// g(q) evaluated with the given x: 4 x^T dtilde q + q^T p.
double inner_objective(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& p,
                       const Eigen::VectorXd& q, const Eigen::VectorXd& x);

/// q ⊙ exp(gamma * grad), renormalized to the simplex.
SimplexPoint exponentiated_step(const SimplexPoint& q, const Eigen::VectorXd& grad, double gamma,
                                bool stabilize);

struct MdaResult {
  SimplexPoint q;         ///< best dual point found (largest g)
  Eigen::VectorXd x;      ///< inner minimizer at q
  double g_value = 0.0;   ///< g(q)
  double primal_value = 0.0;  ///< max_c u_c(x), the surrogate objective at x
  int iterations = 0;
  std::vector<double> g_trace;  ///< g(q^m) for every inner iterate
};

/// Maximizes g(q) = min_x 4 x^T dtilde q + q^T p over the simplex by mirror
/// descent with exponentiated updates, starting from the uniform point.
/// Throws NumericError if dtilde or p contain non-finite values.
MdaResult mda_solve(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& p, const MdaConfig& cfg);
MdaResult mda_solve(const SurrogateSystem& sys, const MdaConfig& cfg);

}  // namespace pslset
