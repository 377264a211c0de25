#include "pslset/radar.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pslset/errors.hpp"
#include "rng.hpp"

namespace pslset::radar {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Eigen::VectorXcd ula_response(int count, double spacing, double sin_theta) {
  Eigen::VectorXcd v(count);
  for (int n = 0; n < count; ++n) {
    const double phase = -2.0 * std::numbers::pi * spacing * n * sin_theta;
    v(n) = cdouble(std::cos(phase), std::sin(phase));
  }
  return v;
}

// S is M x L with one sequence per column.
Eigen::MatrixXcd probing_matrix(const SequenceSet& set) {
  const auto M = static_cast<Eigen::Index>(set.length());
  const auto L = static_cast<Eigen::Index>(set.num_sequences());
  Eigen::MatrixXcd s(M, L);
  for (Eigen::Index l = 0; l < L; ++l)
    for (Eigen::Index m = 0; m < M; ++m)
      s(m, l) = set.element(static_cast<std::size_t>(l), static_cast<std::size_t>(m));
  return s;
}

}  // namespace

void ArrayGeometry::validate() const {
  if (num_tx < 1 || num_rx < 1 || !(tx_spacing > 0.0) || !(rx_spacing > 0.0))
    throw std::invalid_argument("ArrayGeometry: counts and spacings must be positive");
}

Steering steering_vectors(const ArrayGeometry& geom, double theta_deg) {
  geom.validate();
  if (!(std::abs(theta_deg) < 90.0)) throw std::invalid_argument("steering_vectors: |theta| must be < 90");
  const double st = std::sin(theta_deg * kDegToRad);
  return {ula_response(geom.num_tx, geom.tx_spacing, st), ula_response(geom.num_rx, geom.rx_spacing, st)};
}

std::vector<double> uniform_angles(std::size_t count, double first_deg, double last_deg) {
  if (count == 0) throw std::invalid_argument("uniform_angles: empty grid");
  std::vector<double> out(count, first_deg);
  if (count == 1) return out;
  const double step = (last_deg - first_deg) / static_cast<double>(count - 1);
  for (std::size_t p = 0; p < count; ++p) out[p] = first_deg + step * static_cast<double>(p);
  return out;
}

void RadarScene::validate() const {
  if (beta.rows() < 1 || beta.cols() < 1) throw std::invalid_argument("RadarScene: empty grid");
  if (static_cast<std::size_t>(beta.cols()) != theta_deg.size())
    throw std::invalid_argument("RadarScene: angle grid length does not match beta columns");
  if (!beta.allFinite()) throw std::invalid_argument("RadarScene: non-finite reflectivity");
  if (!(noise_variance >= 0.0)) throw std::invalid_argument("RadarScene: negative noise variance");
}

double noise_variance_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

RadarScene random_scene(std::size_t range_bins, std::size_t angles, double density,
                        std::uint64_t seed, double noise_variance) {
  if (range_bins < 1 || angles < 1) throw std::invalid_argument("random_scene: empty grid");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("random_scene: density outside [0, 1]");
  std::mt19937_64 gen(seed);
  RadarScene scene{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(range_bins), static_cast<Eigen::Index>(angles)),
                   uniform_angles(angles), noise_variance};
  for (Eigen::Index r = 0; r < scene.beta.rows(); ++r)
    for (Eigen::Index p = 0; p < scene.beta.cols(); ++p) {
      const bool occupied = detail::uniform01(gen) < density;
      const cdouble value = detail::complex_gaussian(gen, 1.0);
      if (occupied) scene.beta(r, p) = value;
    }
  return scene;
}

RadarScene mask_scene(const std::vector<std::string>& mask, std::uint64_t seed, double noise_variance) {
  if (mask.empty() || mask.front().empty()) throw std::invalid_argument("mask_scene: empty mask");
  const std::size_t cols = mask.front().size();
  std::mt19937_64 gen(seed);
  RadarScene scene{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(mask.size()), static_cast<Eigen::Index>(cols)),
                   uniform_angles(cols), noise_variance};
  for (std::size_t r = 0; r < mask.size(); ++r) {
    if (mask[r].size() != cols) throw std::invalid_argument("mask_scene: ragged mask rows");
    for (std::size_t p = 0; p < cols; ++p) {
      const char cell = mask[r][p];
      if (cell != '#' && cell != '.') throw std::invalid_argument("mask_scene: cells must be '#' or '.'");
      const cdouble value = detail::complex_gaussian(gen, 1.0);
      if (cell == '#') scene.beta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p)) = value;
    }
  }
  return scene;
}

ReceivedData simulate_received(const RadarScene& scene, const ArrayGeometry& geom,
                               const SequenceSet& set, std::uint64_t seed) {
  scene.validate();
  geom.validate();
  if (set.num_sequences() != static_cast<std::size_t>(geom.num_tx))
    throw std::invalid_argument("simulate_received: number of sequences must equal num_tx");

  const auto M = static_cast<Eigen::Index>(set.length());
  const auto Q = static_cast<Eigen::Index>(scene.range_bins());
  const Eigen::Index samples = M + Q - 1;
  const Eigen::MatrixXcd s = probing_matrix(set);
  const Eigen::MatrixXcd s_conj_t = s.conjugate().transpose();  // L x M

  std::vector<Steering> steering;
  steering.reserve(scene.angles());
  for (double theta : scene.theta_deg) steering.push_back(steering_vectors(geom, theta));

  ReceivedData out{Eigen::MatrixXcd::Zero(geom.num_rx, samples)};
  for (Eigen::Index r = 0; r < Q; ++r) {
    // Sum over angles of beta c d^T for this range bin, num_rx x num_tx.
    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(geom.num_rx, geom.num_tx);
    bool any = false;
    for (Eigen::Index p = 0; p < scene.beta.cols(); ++p) {
      const cdouble b = scene.beta(r, p);
      if (b == cdouble(0.0)) continue;
      const auto& sv = steering[static_cast<std::size_t>(p)];
      mix.noalias() += b * (sv.rx * sv.tx.transpose());
      any = true;
    }
    // Delay by r samples: column b of S^H J_r is conj(S(b - r, :))^T.
    if (any) out.b_h.middleCols(r, M).noalias() += mix * s_conj_t;
  }

  if (scene.noise_variance > 0.0) {
    std::mt19937_64 gen(seed);
    for (Eigen::Index b = 0; b < samples; ++b)
      for (Eigen::Index n = 0; n < out.b_h.rows(); ++n)
        out.b_h(n, b) += detail::complex_gaussian(gen, scene.noise_variance);
  }
  return out;
}

Eigen::MatrixXcd matched_filter(const SequenceSet& set, std::size_t range_bins, std::size_t q) {
  if (range_bins < 1 || q >= range_bins) throw std::invalid_argument("matched_filter: range bin out of range");
  const auto M = static_cast<Eigen::Index>(set.length());
  const auto L = static_cast<Eigen::Index>(set.num_sequences());
  const Eigen::Index samples = M + static_cast<Eigen::Index>(range_bins) - 1;
  const Eigen::MatrixXcd s = probing_matrix(set);

  const Eigen::MatrixXcd gram = s.adjoint() * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) throw NumericError("matched_filter: S^H S is singular");
  const Eigen::MatrixXcd inv = gram.ldlt().solve(Eigen::MatrixXcd::Identity(L, L));

  Eigen::MatrixXcd filter = Eigen::MatrixXcd::Zero(samples, L);
  filter.middleRows(static_cast<Eigen::Index>(q), M) = s * inv;
  return filter;
}

std::vector<Eigen::MatrixXcd> range_compress(const ReceivedData& data, const SequenceSet& set,
                                             std::size_t range_bins) {
  const Eigen::Index samples = static_cast<Eigen::Index>(set.length() + range_bins) - 1;
  if (data.b_h.cols() != samples) throw std::invalid_argument("range_compress: sample count mismatch");
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(range_bins);
  for (std::size_t q = 0; q < range_bins; ++q) out.push_back(data.b_h * matched_filter(set, range_bins, q));
  return out;
}

// The data model carries d_p^T, so projecting onto the transmit steering uses
// conj(d_p); this makes both estimators exact for a lone noiseless target at
// any angle.
Eigen::MatrixXcd estimate_ls(const std::vector<Eigen::MatrixXcd>& compressed,
                             const ArrayGeometry& geom, const std::vector<double>& theta_deg) {
  const auto Q = static_cast<Eigen::Index>(compressed.size());
  const auto P = static_cast<Eigen::Index>(theta_deg.size());
  Eigen::MatrixXcd out(Q, P);
  for (Eigen::Index p = 0; p < P; ++p) {
    const Steering sv = steering_vectors(geom, theta_deg[static_cast<std::size_t>(p)]);
    const double denom = sv.rx.squaredNorm() * sv.tx.squaredNorm();
    const Eigen::VectorXcd d_conj = sv.tx.conjugate();
    for (Eigen::Index q = 0; q < Q; ++q) {
      const auto& bq = compressed[static_cast<std::size_t>(q)];
      if (bq.rows() != geom.num_rx || bq.cols() != geom.num_tx)
        throw std::invalid_argument("estimate_ls: compressed data shape does not match the array");
      out(q, p) = sv.rx.dot(bq * d_conj) / denom;
    }
  }
  return out;
}

Eigen::MatrixXcd estimate_capon(const std::vector<Eigen::MatrixXcd>& compressed,
                                const ArrayGeometry& geom, const std::vector<double>& theta_deg,
                                const CaponOptions& options) {
  const auto Q = static_cast<Eigen::Index>(compressed.size());
  const auto P = static_cast<Eigen::Index>(theta_deg.size());
  std::vector<Steering> steering;
  for (double theta : theta_deg) steering.push_back(steering_vectors(geom, theta));

  Eigen::MatrixXcd out(Q, P);
  for (Eigen::Index q = 0; q < Q; ++q) {
    const auto& bq = compressed[static_cast<std::size_t>(q)];
    if (bq.rows() != geom.num_rx || bq.cols() != geom.num_tx)
      throw std::invalid_argument("estimate_capon: compressed data shape does not match the array");
    Eigen::MatrixXcd cov;
    if (options.identity_covariance) {
      cov = Eigen::MatrixXcd::Identity(geom.num_rx, geom.num_rx);
    } else {
      cov = bq * bq.adjoint();
      const double loading = options.loading_ratio * cov.trace().real() / geom.num_rx;
      cov.diagonal().array() += loading;
    }
    cov.diagonal().array() += options.extra_loading;

    const Eigen::LDLT<Eigen::MatrixXcd> solver(cov);
    const Eigen::VectorXd diag = solver.vectorD().real();
    if (solver.info() != Eigen::Success || !(diag.minCoeff() > 0.0) ||
        diag.maxCoeff() / diag.minCoeff() > 1e14)
      throw NumericError("estimate_capon: covariance is singular for range bin " + std::to_string(q));

    for (Eigen::Index p = 0; p < P; ++p) {
      const auto& sv = steering[static_cast<std::size_t>(p)];
      const Eigen::VectorXcd w = solver.solve(sv.rx);  // V^-1 c
      const cdouble num = w.dot(bq * sv.tx.conjugate());
      const double den = w.dot(sv.rx).real() * sv.tx.squaredNorm();
      out(q, p) = num / den;
    }
  }
  return out;
}

double image_mse(const Eigen::MatrixXcd& estimate, const Eigen::MatrixXcd& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw std::invalid_argument("image_mse: shape mismatch");
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

ExperimentResult run_experiment(const RadarScene& scene, const ArrayGeometry& geom,
                                const SequenceSet& set, std::uint64_t noise_seed, Estimator estimator) {
  const ReceivedData data = simulate_received(scene, geom, set, noise_seed);
  const auto compressed = range_compress(data, set, scene.range_bins());
  ExperimentResult result;
  if (estimator != Estimator::capon) {
    result.ls = estimate_ls(compressed, geom, scene.theta_deg);
    result.ls_mse = image_mse(*result.ls, scene.beta);
  }
  if (estimator != Estimator::ls) {
    result.capon = estimate_capon(compressed, geom, scene.theta_deg);
    result.capon_mse = image_mse(*result.capon, scene.beta);
  }
  return result;
}

}  // namespace pslset::radar
