#pragma once

#include <cstddef>
#include <vector>

namespace pslset {

/// One penalized correlation r_{i,j}(k), zero-based sequence indices.
struct LagConstraint {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  bool operator==(const LagConstraint&) const = default;
};

/// The ordered set of (i, j, k) whose correlation magnitudes enter the PSL.
///
/// Auto-correlations (i == j) use lags 1..M-1; cross-correlations (i != j)
/// use lags 0..M-1. Both orderings of a cross pair are kept, so |K| is
/// L(M-1) + L(L-1)M. Enumeration is row-major over (i, j), lag ascending.
class LagConstraintSet {
 public:
  /// Full enumeration for L sequences of length M.
  static LagConstraintSet all(std::size_t num_sequences, std::size_t length);

  /// An explicit subset. Every triple must be admissible and unique.
  LagConstraintSet(std::size_t num_sequences, std::size_t length,
                   std::vector<LagConstraint> constraints);

  /// Keeps the constraints at the given positions, in that order.
  LagConstraintSet subset(const std::vector<std::size_t>& positions) const;

  static bool admissible(const LagConstraint& c, std::size_t num_sequences, std::size_t length);

  std::size_t num_sequences() const { return num_sequences_; }
  std::size_t length() const { return length_; }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }

  const LagConstraint& operator[](std::size_t n) const { return constraints_[n]; }
  auto begin() const { return constraints_.begin(); }
  auto end() const { return constraints_.end(); }

 private:
  std::size_t num_sequences_;
  std::size_t length_;
  std::vector<LagConstraint> constraints_;
};

}  // namespace pslset
