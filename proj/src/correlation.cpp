#include "pslset/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace pslset {

CorrelationTable::CorrelationTable(std::size_t num_sequences, std::size_t length)
    : num_sequences_(num_sequences),
      length_(length),
      values_(num_sequences * num_sequences * (2 * length - 1)) {}

std::size_t CorrelationTable::offset(std::size_t i, std::size_t j, long k) const {
  const long max_lag = static_cast<long>(length_) - 1;
  if (i >= num_sequences_ || j >= num_sequences_ || k < -max_lag || k > max_lag)
    throw std::out_of_range("CorrelationTable: index or lag out of range");
  return (i * num_sequences_ + j) * (2 * length_ - 1) + static_cast<std::size_t>(k + max_lag);
}

cdouble correlate_brute(const SequenceSet& set, std::size_t i, std::size_t j, long k) {
  const std::size_t L = set.num_sequences();
  const long M = static_cast<long>(set.length());
  if (i >= L || j >= L) throw std::invalid_argument("correlate_brute: sequence index out of range");
  if (k <= -M || k >= M) throw std::invalid_argument("correlate_brute: lag out of range");
  if (k < 0) return std::conj(correlate_brute(set, j, i, -k));

  cdouble acc = 0.0;
  for (long m = 0; m + k < M; ++m)
    acc += std::conj(set.element(i, static_cast<std::size_t>(m))) *
           set.element(j, static_cast<std::size_t>(m + k));
  return acc;
}

CorrelationTable correlate_all_fft(const SequenceSet& set) {
  const std::size_t L = set.num_sequences();
  const std::size_t M = set.length();
  const std::size_t n = detail::next_pow2(2 * M - 1);
  detail::FftPlan plan(n);

  std::vector<std::vector<cdouble>> spectra(L, std::vector<cdouble>(n));
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t m = 0; m < M; ++m) spectra[i][m] = set.element(i, m);
    plan.forward(spectra[i]);
  }

  CorrelationTable table(L, M);
  std::vector<cdouble> work(n);
  const double scale = 1.0 / static_cast<double>(n);
  const long max_lag = static_cast<long>(M) - 1;
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i; j < L; ++j) {
      for (std::size_t f = 0; f < n; ++f) work[f] = std::conj(spectra[i][f]) * spectra[j][f];
      plan.inverse(work);
      for (long k = -max_lag; k <= max_lag; ++k) {
        const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
        const cdouble r = work[idx] * scale;
        table.at(i, j, k) = r;
        table.at(j, i, -k) = std::conj(r);
      }
    }
    // The mainlobe of a unit-modulus sequence is exactly M.
    table.at(i, i, 0) = static_cast<double>(M);
  }
  return table;
}

PeakSidelobe psl(const CorrelationTable& table, const LagConstraintSet& constraints) {
  if (constraints.empty()) throw std::invalid_argument("psl: empty constraint set");
  if (table.num_sequences() != constraints.num_sequences() || table.length() != constraints.length())
    throw std::invalid_argument("psl: table and constraints built for different (L, M)");
  PeakSidelobe best;
  best.value = -1.0;
  for (std::size_t n = 0; n < constraints.size(); ++n) {
    const double v = std::abs(table.at(constraints[n]));
    if (v > best.value) best = {v, n, constraints[n]};
  }
  return best;
}

double isl(const CorrelationTable& table, const LagConstraintSet& constraints) {
  if (constraints.empty()) throw std::invalid_argument("isl: empty constraint set");
  if (table.num_sequences() != constraints.num_sequences() || table.length() != constraints.length())
    throw std::invalid_argument("isl: table and constraints built for different (L, M)");
  double acc = 0.0;
  for (const auto& c : constraints) acc += std::norm(table.at(c));
  return acc;
}

double psl_of(const SequenceSet& set) {
  return psl(correlate_all_fft(set), LagConstraintSet::all(set.num_sequences(), set.length())).value;
}

}  // namespace pslset
