#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "pslset/solver.hpp"
#include "pslset/surrogate.hpp"

using namespace pslset;

namespace {

const cdouble I1{0.0, 1.0};

// Dense ML x ML shift operator: s^H A s == r_{i,j}(k).
Eigen::MatrixXcd dense_shift(std::size_t L, std::size_t M, const LagConstraint& c) {
  const auto n = static_cast<Eigen::Index>(L * M);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t m = 0; m + c.k < M; ++m)
    A(static_cast<Eigen::Index>(c.i * M + m), static_cast<Eigen::Index>(c.j * M + m + c.k)) = 1.0;
  return A;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& A) {
  return Eigen::Map<const Eigen::VectorXcd>(A.data(), A.size());
}

double max_eigenvalue(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

SequenceSet random_unimodular(std::size_t L, std::size_t M, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.141592653589793);
  std::vector<double> phases(L * M);
  for (auto& v : phases) v = u(gen);
  return SequenceSet(L, M, phases);
}

}  // namespace

TEST_CASE("closed-form eigenvalue of the lifted form") {
  CHECK(lambda_max_phi(100, 1) == 99.0);
  CHECK(lambda_max_phi(4, 3) == 1.0);
  CHECK_THROWS_AS(lambda_max_phi(4, 4), std::invalid_argument);

  const std::size_t L = 2, M = 4;
  const LagConstraint c{0, 1, 2};
  const Eigen::MatrixXcd A = dense_shift(L, M, c);
  const Eigen::VectorXcd a = vec(A), b = vec(A.adjoint());
  CHECK(max_eigenvalue(a * b.adjoint() + b * a.adjoint()) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(max_eigenvalue(a * a.adjoint() + b * b.adjoint()) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("shift operators match the dense matrix") {
  std::mt19937_64 gen(4);
  const std::size_t L = 3, M = 6;
  const SequenceSet set = random_unimodular(L, M, gen);
  const Eigen::VectorXcd s = set.stacked();
  const auto table = correlate_all_fft(set);
  for (const auto& c : LagConstraintSet::all(L, M)) {
    const Eigen::MatrixXcd A = dense_shift(L, M, c);
    CHECK((apply_shift(s, M, c) - A * s).norm() < 1e-13);
    CHECK((apply_shift_adjoint(s, M, c) - A.adjoint() * s).norm() < 1e-13);
    CHECK(std::abs(s.dot(A * s) - table.at(c)) < 1e-12);
  }
}

TEST_CASE("eigenvalue bounds dominate the dense spectrum") {
  std::mt19937_64 gen(9);
  const std::size_t L = 2, M = 5;
  const SequenceSet set = random_unimodular(L, M, gen);
  const auto table = correlate_all_fft(set);
  for (const auto& c : LagConstraintSet::all(L, M)) {
    const cdouble r = table.at(c);
    const Eigen::MatrixXcd A = dense_shift(L, M, c);
    const double dense = max_eigenvalue(std::conj(r) * A + r * A.adjoint());
    const double spectral = lambda_bound_D(set, table, c, EigenMode::spectral_bound_D).value;
    const double power = lambda_bound_D(set, table, c, EigenMode::power_iteration_D).value;
    CHECK(spectral == doctest::Approx(2.0 * std::abs(r)));
    CHECK(spectral >= dense - 1e-8);
    CHECK(power >= dense - 1e-8);
    CHECK(power <= spectral);
  }
  CHECK_THROWS_AS(lambda_bound_D(set, table, {0, 0, 1}, EigenMode::closed_form_phi), std::invalid_argument);
}

TEST_CASE("bounds on the all-ones sequence") {
  const SequenceSet set(1, 4);
  const auto table = correlate_all_fft(set);
  const LagConstraint c{0, 0, 1};
  const Eigen::MatrixXcd A = dense_shift(1, 4, c);
  const double dense = max_eigenvalue(3.0 * A + 3.0 * A.adjoint());
  const double power = lambda_bound_D(set, table, c, EigenMode::power_iteration_D).value;
  CHECK(lambda_bound_D(set, table, c, EigenMode::spectral_bound_D).value == doctest::Approx(6.0));
  CHECK(power > 0.0);
  CHECK(power <= 6.0);
  CHECK(power >= dense - 1e-8);
}

TEST_CASE("vanishing correlation") {
  const auto set = SequenceSet::from_elements({{1.0, I1, 1.0}});
  const auto table = correlate_all_fft(set);
  const LagConstraint c{0, 0, 1};
  REQUIRE(std::abs(table.at(c)) < 1e-15);
  CHECK(lambda_bound_D(set, table, c).value == 0.0);

  const LagConstraintSet K(1, 3, {c});
  const SurrogateSystem sys = build_surrogate(set, K, table);
  const double anchor = anchor_weight(3, c);
  CHECK(anchor == 8.0);
  const Eigen::VectorXd expected = -anchor * set.real_stack();
  CHECK((sys.dtilde.col(0) - expected).norm() < 1e-14);
  CHECK(sys.p(0) == doctest::Approx(4.0 * anchor * 3.0));
}

TEST_CASE("surrogate is tangent and dominates") {
  std::mt19937_64 gen(21);
  const std::size_t L = 2, M = 8;
  const auto K = LagConstraintSet::all(L, M);
  for (double scale : {1.0, 2.0}) {
    for (EigenMode mode : {EigenMode::spectral_bound_D, EigenMode::power_iteration_D}) {
      for (int trial = 0; trial < 5; ++trial) {
        const SequenceSet st = random_unimodular(L, M, gen);
        const auto table = correlate_all_fft(st);
        const SurrogateSystem sys = build_surrogate(st, K, table, {mode, scale});
        const Eigen::VectorXd at_t = sys.values(st.real_stack());
        for (std::size_t n = 0; n < K.size(); ++n) {
          const double f = 2.0 * std::norm(table.at(K[n]));
          CHECK(std::abs(at_t(static_cast<Eigen::Index>(n)) - f) <= 1e-8 * std::max(f, 1.0));
        }
        for (int sample = 0; sample < 20; ++sample) {
          const SequenceSet s = random_unimodular(L, M, gen);
          const auto ts = correlate_all_fft(s);
          const Eigen::VectorXd u = sys.values(s.real_stack());
          for (std::size_t n = 0; n < K.size(); ++n)
            CHECK(u(static_cast<Eigen::Index>(n)) >= 2.0 * std::norm(ts.at(K[n])) - 1e-8);
        }
      }
    }
  }
}

TEST_CASE("surrogate argument checks") {
  const SequenceSet set(2, 4);
  const auto table = correlate_all_fft(set);
  CHECK_THROWS_AS(build_surrogate(set, LagConstraintSet::all(2, 5), table), std::invalid_argument);
  CHECK_THROWS_AS(build_surrogate(set, LagConstraintSet::all(2, 4), table, {EigenMode::spectral_bound_D, 0.5}),
                  std::invalid_argument);
}
