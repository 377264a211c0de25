#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pslset/sequence_set.hpp"

namespace pslset::radar {

/// Colocated transmit/receive uniform linear arrays, spacings in wavelengths.
struct ArrayGeometry {
  int num_tx = 4;
  int num_rx = 4;
  double tx_spacing = 2.0;
  double rx_spacing = 0.5;

  void validate() const;
};

struct Steering {
  Eigen::VectorXcd tx;  ///< d_p
  Eigen::VectorXcd rx;  ///< c_p
};

/// Element n carries exp(-j 2 pi spacing n sin(theta)). theta in degrees, |theta| < 90.
Steering steering_vectors(const ArrayGeometry& geom, double theta_deg);

/// P angles evenly spaced over [first_deg, last_deg].
std::vector<double> uniform_angles(std::size_t count, double first_deg = -40.0, double last_deg = 40.0);

/// Reflectivities on a Q x P range-angle grid plus receiver noise variance.
struct RadarScene {
  Eigen::MatrixXcd beta;          ///< Q x P
  std::vector<double> theta_deg;  ///< length P
  double noise_variance = 1e-3;

  std::size_t range_bins() const { return static_cast<std::size_t>(beta.rows()); }
  std::size_t angles() const { return static_cast<std::size_t>(beta.cols()); }
  void validate() const;
};

double noise_variance_from_snr_db(double snr_db);

/// Targets on a random support of the given density, each reflectivity drawn
/// i.i.d. circular complex Gaussian with unit variance.
RadarScene random_scene(std::size_t range_bins, std::size_t angles, double density,
                        std::uint64_t seed, double noise_variance = 1e-3);

/// Targets on the '#' cells of an ASCII mask (rows are range bins).
RadarScene mask_scene(const std::vector<std::string>& mask, std::uint64_t seed,
                      double noise_variance = 1e-3);

struct ReceivedData {
  Eigen::MatrixXcd b_h;  ///< num_rx x (M + Q - 1)
};

/// Received samples for the scene probed by `set` (one sequence per transmitter),
/// with i.i.d. circular Gaussian noise of the scene's variance.
ReceivedData simulate_received(const RadarScene& scene, const ArrayGeometry& geom,
                               const SequenceSet& set, std::uint64_t seed);

/// Range-compression filter for bin q: the zero-padded probing matrix delayed
/// by q samples, times (S^H S)^-1. Shape (M + Q - 1) x L.
Eigen::MatrixXcd matched_filter(const SequenceSet& set, std::size_t range_bins, std::size_t q);

/// Filter outputs B_H * filter_q for q = 0..Q-1, each num_rx x L.
std::vector<Eigen::MatrixXcd> range_compress(const ReceivedData& data, const SequenceSet& set,
                                             std::size_t range_bins);

/// Least-squares reflectivity estimate per (range bin, angle).
Eigen::MatrixXcd estimate_ls(const std::vector<Eigen::MatrixXcd>& compressed,
                             const ArrayGeometry& geom, const std::vector<double>& theta_deg);

struct CaponOptions {
  /// Diagonal loading relative to trace(V)/num_rx.
  double loading_ratio = 1e-6;
  /// Absolute loading added on top.
  double extra_loading = 0.0;
  /// Replace every covariance by the identity.
  bool identity_covariance = false;
};

/// Capon (adaptive) reflectivity estimate using the per-bin sample covariance
/// of the compressed snapshots. Throws NumericError if a loaded covariance is
/// singular.
Eigen::MatrixXcd estimate_capon(const std::vector<Eigen::MatrixXcd>& compressed,
                                const ArrayGeometry& geom, const std::vector<double>& theta_deg,
                                const CaponOptions& options = {});

/// Mean of |estimate - truth|^2 over the image.
double image_mse(const Eigen::MatrixXcd& estimate, const Eigen::MatrixXcd& truth);

enum class Estimator { ls, capon, both };

struct ExperimentResult {
  std::optional<Eigen::MatrixXcd> ls;
  std::optional<Eigen::MatrixXcd> capon;
  std::optional<double> ls_mse;
  std::optional<double> capon_mse;
};

/// simulate -> compress -> estimate, for one scene and one probing set.
ExperimentResult run_experiment(const RadarScene& scene, const ArrayGeometry& geom,
                                const SequenceSet& set, std::uint64_t noise_seed,
                                Estimator estimator = Estimator::both);

}  // namespace pslset::radar
