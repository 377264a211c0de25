#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pslset/correlation.hpp"
#include "pslset/lag_constraints.hpp"
#include "pslset/sequence_set.hpp"

namespace pslset {

enum class EigenMode {
  closed_form_phi,    ///< M - k, the largest eigenvalue of the lifted quadratic form
  spectral_bound_D,   ///< 2|r|, from ||shift||_2 = 1
  power_iteration_D,  ///< tightened estimate, never above the spectral bound
};

struct EigenBound {
  double value = 0.0;
  EigenMode mode = EigenMode::spectral_bound_D;
};

/// Largest eigenvalue of the lifted (ML)^2 x (ML)^2 quadratic form of
/// constraint lag k, which is M - k in closed form.
double lambda_max_phi(std::size_t length, std::size_t k);

/// (shift_{i,j}(k) s): block i holds s_j advanced by k, all other blocks zero.
Eigen::VectorXcd apply_shift(const Eigen::VectorXcd& s, std::size_t length, const LagConstraint& c);

/// (shift_{i,j}(k)^H s): block j holds s_i delayed by k, all other blocks zero.
Eigen::VectorXcd apply_shift_adjoint(const Eigen::VectorXcd& s, std::size_t length,
                                     const LagConstraint& c);

/// D v = conj(r) shift v + r shift^H v, the Hermitian matrix whose quadratic
/// form at s^t equals 2|r|^2.
Eigen::VectorXcd apply_cross_term(const Eigen::VectorXcd& v, std::size_t length,
                                  const LagConstraint& c, cdouble r);

/// Upper bound on lambda_max(D) for constraint c at the current iterate.
/// mode must be spectral_bound_D or power_iteration_D.
EigenBound lambda_bound_D(const SequenceSet& set, const CorrelationTable& table,
                          const LagConstraint& c, EigenMode mode = EigenMode::spectral_bound_D);

/// Curvature weight on ||s - s^t||^2 that dominates 2|r(s) - r(s^t)|^2 on
/// the unit-modulus set: 2(M-k) per block touched (4(M-k) for i == j).
double anchor_weight(std::size_t length, const LagConstraint& c);

struct SurrogateOptions {
  EigenMode eigen_mode = EigenMode::spectral_bound_D;
  /// Multiplies every eigenvalue bound (>= 1 keeps the surrogate valid).
  double bound_scale = 1.0;
};

/// Linear majorizer of 2|r_{i,j}(k)|^2 at an iterate, one column per constraint:
///   u_c(x) = 4 x^T dtilde.col(c) + p(c) >= 2|r_c(s)|^2,  equality at s = s^t,
/// where x = [Re(s); Im(s)]. dtilde is column-major (constraint-major).
struct SurrogateSystem {
  Eigen::MatrixXd dtilde;
  Eigen::VectorXd p;
  LagConstraintSet constraints;
  SequenceSet iterate;
  std::vector<double> corr_abs;
  std::vector<double> lambda_bound;

  std::size_t num_constraints() const { return static_cast<std::size_t>(p.size()); }

  /// u_c(x) for every constraint.
  Eigen::VectorXd values(const Eigen::VectorXd& x) const;
};

SurrogateSystem build_surrogate(const SequenceSet& set, const LagConstraintSet& constraints,
                                const CorrelationTable& table, const SurrogateOptions& options = {});

}  // namespace pslset
