#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace pslset {

using cdouble = std::complex<double>;

/// L unit-modulus sequences of length M, stored as phases in radians.
///
/// Elements are derived on demand as exp(j*phase), so |s_i(m)| == 1 holds
/// exactly regardless of how the phases were produced or serialized.
/// Sequence indices and sample indices are zero-based.
class SequenceSet {
 public:
  /// All-zero phases (every element equals 1). Requires L >= 1, M >= 2.
  SequenceSet(std::size_t num_sequences, std::size_t length);

  /// Row-major phases, one row per sequence.
  SequenceSet(std::size_t num_sequences, std::size_t length, std::vector<double> phases);

  /// Phases of the given complex elements (row per sequence). Zero entries map to phase 0.
  static SequenceSet from_elements(const std::vector<std::vector<cdouble>>& rows);

  /// Recovers phases from the stacked real vector x = [Re(s); Im(s)] of length 2ML.
  static SequenceSet from_real_stack(std::size_t num_sequences, std::size_t length,
                                     const Eigen::VectorXd& x);

  std::size_t num_sequences() const { return num_sequences_; }
  std::size_t length() const { return length_; }
  std::size_t stacked_size() const { return num_sequences_ * length_; }

  double phase(std::size_t i, std::size_t m) const { return phases_[i * length_ + m]; }
  void set_phase(std::size_t i, std::size_t m, double value) { phases_[i * length_ + m] = value; }
  const std::vector<double>& phases() const { return phases_; }

  cdouble element(std::size_t i, std::size_t m) const;
  std::vector<cdouble> sequence(std::size_t i) const;

  /// s = [s_1; s_2; ...; s_L], length ML.
  Eigen::VectorXcd stacked() const;

  /// x = [Re(s); Im(s)], length 2ML.
  Eigen::VectorXd real_stack() const;

  bool operator==(const SequenceSet& other) const = default;

 private:
  std::size_t num_sequences_;
  std::size_t length_;
  std::vector<double> phases_;
};

}  // namespace pslset
