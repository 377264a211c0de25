#include "pslset/mda.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pslset/errors.hpp"

namespace pslset {

SimplexPoint SimplexPoint::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("SimplexPoint: empty simplex");
  return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size), 1.0 / static_cast<double>(size))};
}

bool SimplexPoint::valid(double tol) const {
  if (q.size() == 0) return false;
  if ((q.array() < 0.0).any() || !q.allFinite()) return false;
  return std::abs(q.sum() - 1.0) <= tol;
}

Eigen::VectorXd inner_minimize_x(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& q) {
  if (dtilde.cols() != q.size() || dtilde.rows() % 2 != 0)
    throw std::invalid_argument("inner_minimize_x: dimension mismatch");
  const Eigen::VectorXd c = -(dtilde * q);
  const Eigen::Index n = dtilde.rows() / 2;
  Eigen::VectorXd x(2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double norm = std::hypot(c(a), c(a + n));
    if (norm < 1e-14) {
      x(a) = 1.0;
      x(a + n) = 0.0;
    } else {
      x(a) = c(a) / norm;
      x(a + n) = c(a + n) / norm;
    }
  }
  return x;
}

Eigen::VectorXd inner_minimize_x(const SurrogateSystem& sys, const SimplexPoint& q) {
  return inner_minimize_x(sys.dtilde, q.q);
}

double inner_objective(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& p,
                       const Eigen::VectorXd& q, const Eigen::VectorXd& x) {
  return 4.0 * x.dot(dtilde * q) + q.dot(p);
}

SimplexPoint exponentiated_step(const SimplexPoint& q, const Eigen::VectorXd& grad, double gamma,
                                bool stabilize) {
  if (grad.size() != q.q.size()) throw std::invalid_argument("exponentiated_step: size mismatch");
  Eigen::ArrayXd exponent = gamma * grad.array();
  if (stabilize) exponent -= exponent.maxCoeff();
  Eigen::VectorXd next = (q.q.array() * exponent.exp()).matrix();
  const double total = next.sum();
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericError("exponentiated_step: simplex update degenerated");
  next /= total;
  return {std::move(next)};
}

namespace {

void check_finite(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& p) {
  for (Eigen::Index col = 0; col < dtilde.cols(); ++col) {
    if (!dtilde.col(col).allFinite() || !std::isfinite(p(col)))
      throw NumericError("mda_solve: non-finite surrogate data in constraint " + std::to_string(col),
                         static_cast<std::size_t>(col));
  }
}

double step_size(const MdaConfig& cfg, int m, const Eigen::VectorXd& grad) {
  double gamma = cfg.step_rule == StepRule::inv_sqrt ? cfg.gamma0 / std::sqrt(m + 1.0) : cfg.gamma0;
  if (cfg.normalize_step) {
    const double spread = grad.maxCoeff() - grad.minCoeff();
    if (spread > 0.0) gamma /= spread;
  }
  return gamma;
}

}  // namespace

MdaResult mda_solve(const Eigen::MatrixXd& dtilde, const Eigen::VectorXd& p, const MdaConfig& cfg) {
  if (p.size() < 1) throw std::invalid_argument("mda_solve: empty constraint set");
  if (dtilde.cols() != p.size()) throw std::invalid_argument("mda_solve: dimension mismatch");
  if (cfg.max_inner_iters < 1 || !(cfg.gamma0 > 0.0) || !(cfg.tol > 0.0))
    throw std::invalid_argument("mda_solve: invalid configuration");
  check_finite(dtilde, p);

  SimplexPoint q = SimplexPoint::uniform(static_cast<std::size_t>(p.size()));
  MdaResult best;
  best.g_value = -std::numeric_limits<double>::infinity();
  best.g_trace.reserve(static_cast<std::size_t>(cfg.max_inner_iters));

  double previous = 0.0;
  for (int m = 0; m < cfg.max_inner_iters; ++m) {
    Eigen::VectorXd x = inner_minimize_x(dtilde, q.q);
    // Surrogate values at x; this is also the subgradient of g at q.
    const Eigen::VectorXd grad = 4.0 * (dtilde.transpose() * x) + p;
    const double g = q.q.dot(grad);
    if (!std::isfinite(g)) throw NumericError("mda_solve: non-finite objective");
    best.g_trace.push_back(g);
    best.iterations = m + 1;
    if (g > best.g_value) {
      best.g_value = g;
      best.q = q;
      best.x = std::move(x);
      best.primal_value = grad.maxCoeff();
    }
    if (m > 0 && std::abs(g - previous) / std::max(std::abs(previous), 1e-12) < cfg.tol) break;
    previous = g;
    q = exponentiated_step(q, grad, step_size(cfg, m, grad), cfg.stabilize);
  }

  if (cfg.sparsify) {
    const double floor = 1e-12 / static_cast<double>(p.size());
    Eigen::VectorXd sparse = (best.q.q.array() < floor).select(0.0, best.q.q);
    best.x = inner_minimize_x(dtilde, sparse);
    best.primal_value = (4.0 * (dtilde.transpose() * best.x) + p).maxCoeff();
  }
  return best;
}

MdaResult mda_solve(const SurrogateSystem& sys, const MdaConfig& cfg) {
  return mda_solve(sys.dtilde, sys.p, cfg);
}

}  // namespace pslset
