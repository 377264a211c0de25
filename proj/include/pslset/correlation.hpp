#pragma once

#include <cstddef>
#include <vector>

#include "pslset/lag_constraints.hpp"
#include "pslset/sequence_set.hpp"

namespace pslset {

/// All aperiodic correlations r_{i,j}(k) of a sequence set, for every ordered
/// pair and every lag -(M-1) <= k <= M-1.
///
/// r_{i,j}(k) = sum_m conj(s_i(m)) s_j(m + k), so r_{i,j}(k) == conj(r_{j,i}(-k)).
class CorrelationTable {
 public:
  CorrelationTable(std::size_t num_sequences, std::size_t length);

  std::size_t num_sequences() const { return num_sequences_; }
  std::size_t length() const { return length_; }

  cdouble at(std::size_t i, std::size_t j, long k) const { return values_[offset(i, j, k)]; }
  cdouble& at(std::size_t i, std::size_t j, long k) { return values_[offset(i, j, k)]; }

  cdouble at(const LagConstraint& c) const { return at(c.i, c.j, static_cast<long>(c.k)); }

 private:
  std::size_t offset(std::size_t i, std::size_t j, long k) const;

  std::size_t num_sequences_;
  std::size_t length_;
  std::vector<cdouble> values_;
};

/// Direct evaluation of one correlation value. Negative lags use the
/// conjugate-symmetry identity. Throws std::invalid_argument on bad indices.
cdouble correlate_brute(const SequenceSet& set, std::size_t i, std::size_t j, long k);

/// Full table through zero-padded FFTs (power-of-two length >= 2M-1). Only the
/// L(L+1)/2 pairs with i <= j are transformed; the rest follow by symmetry.
CorrelationTable correlate_all_fft(const SequenceSet& set);

/// Peak side-lobe level over a constraint set, with the first maximizing
/// constraint in enumeration order.
struct PeakSidelobe {
  double value = 0.0;
  std::size_t position = 0;
  LagConstraint constraint;
};

PeakSidelobe psl(const CorrelationTable& table, const LagConstraintSet& constraints);

/// Integrated side-lobe level: sum of |r|^2 over the constraint set.
double isl(const CorrelationTable& table, const LagConstraintSet& constraints);

/// Convenience: PSL over the full constraint set of the given sequences.
double psl_of(const SequenceSet& set);

}  // namespace pslset
