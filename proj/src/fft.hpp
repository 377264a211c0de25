#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace pslset::detail {

/// In-place complex FFT of a fixed length backed by FFTW.
///
/// Plans are built with FFTW_ESTIMATE so that the same length always maps to
/// the same plan, which keeps results bit-identical across runs.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }

  /// Unnormalized forward transform.
  void forward(std::span<std::complex<double>> data) const;
  /// Unnormalized inverse transform (no 1/n factor).
  void inverse(std::span<std::complex<double>> data) const;

 private:
  std::size_t n_;
  std::complex<double>* buffer_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace pslset::detail
