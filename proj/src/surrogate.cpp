#include "pslset/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pslset {

double lambda_max_phi(std::size_t length, std::size_t k) {
  if (k >= length) throw std::invalid_argument("lambda_max_phi: lag out of range");
  return static_cast<double>(length - k);
}

Eigen::VectorXcd apply_shift(const Eigen::VectorXcd& s, std::size_t length, const LagConstraint& c) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.size());
  const auto M = static_cast<Eigen::Index>(length);
  const auto k = static_cast<Eigen::Index>(c.k);
  const auto bi = static_cast<Eigen::Index>(c.i) * M;
  const auto bj = static_cast<Eigen::Index>(c.j) * M;
  out.segment(bi, M - k) = s.segment(bj + k, M - k);
  return out;
}

Eigen::VectorXcd apply_shift_adjoint(const Eigen::VectorXcd& s, std::size_t length,
                                     const LagConstraint& c) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.size());
  const auto M = static_cast<Eigen::Index>(length);
  const auto k = static_cast<Eigen::Index>(c.k);
  const auto bi = static_cast<Eigen::Index>(c.i) * M;
  const auto bj = static_cast<Eigen::Index>(c.j) * M;
  out.segment(bj + k, M - k) = s.segment(bi, M - k);
  return out;
}

Eigen::VectorXcd apply_cross_term(const Eigen::VectorXcd& v, std::size_t length,
                                  const LagConstraint& c, cdouble r) {
  return std::conj(r) * apply_shift(v, length, c) + r * apply_shift_adjoint(v, length, c);
}

namespace {

constexpr double kPowerTol = 1e-6;
constexpr double kPowerInflation = 1.0 + 1e-6;

// Deterministic start vector; fixed so that bounds are reproducible.
Eigen::VectorXcd start_vector(Eigen::Index n) {
  Eigen::VectorXcd v(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (Eigen::Index a = 0; a < n; ++a) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
    v(a) = cdouble(std::cos(6.283185307179586 * u), std::sin(6.283185307179586 * u));
  }
  return v.normalized();
}

double power_iteration_bound(const SequenceSet& set, const LagConstraint& c, cdouble r) {
  const double spectral = 2.0 * std::abs(r);
  if (spectral == 0.0) return 0.0;

  // Shift by the spectral bound so the operator is PSD and its dominant
  // eigenvalue is lambda_max(D) + shift.
  const std::size_t M = set.length();
  const auto n = static_cast<Eigen::Index>(set.stacked_size());
  Eigen::VectorXcd v = start_vector(n);
  double theta = 0.0;
  const int max_iters = static_cast<int>(std::max<std::size_t>(2000, 20 * M));
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXcd w = apply_cross_term(v, M, c, r) + spectral * v;
    const double next = v.dot(w).real();
    const double residual = (w - next * v).norm();
    const bool converged = it > 0 && std::abs(next - theta) < kPowerTol * std::abs(next);
    theta = next;
    if (converged) {
      const double estimate = std::max(0.0, theta - spectral + residual) * kPowerInflation;
      return std::min(spectral, estimate);
    }
    v = w / w.norm();
  }
  return spectral;
}

}  // namespace

EigenBound lambda_bound_D(const SequenceSet& set, const CorrelationTable& table,
                          const LagConstraint& c, EigenMode mode) {
  const cdouble r = table.at(c);
  switch (mode) {
    case EigenMode::spectral_bound_D:
      return {2.0 * std::abs(r), mode};
    case EigenMode::power_iteration_D:
      return {power_iteration_bound(set, c, r), mode};
    case EigenMode::closed_form_phi:
      break;
  }
  throw std::invalid_argument("lambda_bound_D: closed_form_phi does not bound D");
}

double anchor_weight(std::size_t length, const LagConstraint& c) {
  const double span = static_cast<double>(length - c.k);
  return c.i == c.j ? 4.0 * span : 2.0 * span;
}

Eigen::VectorXd SurrogateSystem::values(const Eigen::VectorXd& x) const {
  return 4.0 * (dtilde.transpose() * x) + p;
}

SurrogateSystem build_surrogate(const SequenceSet& set, const LagConstraintSet& constraints,
                                const CorrelationTable& table, const SurrogateOptions& options) {
  const std::size_t L = set.num_sequences();
  const std::size_t M = set.length();
  if (constraints.num_sequences() != L || constraints.length() != M || table.num_sequences() != L ||
      table.length() != M)
    throw std::invalid_argument("build_surrogate: dimension mismatch");
  if (options.eigen_mode == EigenMode::closed_form_phi)
    throw std::invalid_argument("build_surrogate: eigen mode must bound D");
  if (!(options.bound_scale >= 1.0))
    throw std::invalid_argument("build_surrogate: bound_scale must be >= 1");

  const auto n = static_cast<Eigen::Index>(L * M);
  const double ml = static_cast<double>(L * M);
  const auto K = static_cast<Eigen::Index>(constraints.size());
  const Eigen::VectorXcd s = set.stacked();

  SurrogateSystem sys{Eigen::MatrixXd(2 * n, K), Eigen::VectorXd(K), constraints, set, {}, {}};
  sys.corr_abs.resize(constraints.size());
  sys.lambda_bound.resize(constraints.size());

  for (Eigen::Index col = 0; col < K; ++col) {
    const LagConstraint& c = constraints[static_cast<std::size_t>(col)];
    const cdouble r = table.at(c);
    const double lambda =
        lambda_bound_D(set, table, c, options.eigen_mode).value * options.bound_scale;
    const double anchor = anchor_weight(M, c);

    const Eigen::VectorXcd d = apply_cross_term(s, M, c, r) - (lambda + anchor) * s;
    sys.dtilde.col(col).head(n) = d.real();
    sys.dtilde.col(col).tail(n) = d.imag();
    sys.p(col) = -6.0 * std::norm(r) + 4.0 * lambda * ml + 4.0 * anchor * ml;
    sys.corr_abs[static_cast<std::size_t>(col)] = std::abs(r);
    sys.lambda_bound[static_cast<std::size_t>(col)] = lambda;
  }
  return sys;
}

}  // namespace pslset
