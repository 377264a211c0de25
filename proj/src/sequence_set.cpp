#include "pslset/sequence_set.hpp"

#include <cmath>
#include <stdexcept>

namespace pslset {

namespace {

void check_dims(std::size_t num_sequences, std::size_t length) {
  if (num_sequences < 1) throw std::invalid_argument("SequenceSet: need at least one sequence");
  if (length < 2) throw std::invalid_argument("SequenceSet: sequence length must be >= 2");
}

}  // namespace

SequenceSet::SequenceSet(std::size_t num_sequences, std::size_t length)
    : num_sequences_(num_sequences), length_(length) {
  check_dims(num_sequences, length);
  phases_.assign(num_sequences * length, 0.0);
}

SequenceSet::SequenceSet(std::size_t num_sequences, std::size_t length, std::vector<double> phases)
    : num_sequences_(num_sequences), length_(length), phases_(std::move(phases)) {
  check_dims(num_sequences, length);
  if (phases_.size() != num_sequences * length)
    throw std::invalid_argument("SequenceSet: phase count does not match L*M");
  for (double p : phases_)
    if (!std::isfinite(p)) throw std::invalid_argument("SequenceSet: non-finite phase");
}

SequenceSet SequenceSet::from_elements(const std::vector<std::vector<cdouble>>& rows) {
  if (rows.empty()) throw std::invalid_argument("SequenceSet: no rows");
  const std::size_t length = rows.front().size();
  std::vector<double> phases;
  phases.reserve(rows.size() * length);
  for (const auto& row : rows) {
    if (row.size() != length) throw std::invalid_argument("SequenceSet: ragged rows");
    for (const cdouble& v : row) phases.push_back(std::abs(v) == 0.0 ? 0.0 : std::arg(v));
  }
  return SequenceSet(rows.size(), length, std::move(phases));
}

SequenceSet SequenceSet::from_real_stack(std::size_t num_sequences, std::size_t length,
                                         const Eigen::VectorXd& x) {
  const std::size_t n = num_sequences * length;
  if (static_cast<std::size_t>(x.size()) != 2 * n)
    throw std::invalid_argument("SequenceSet: real stack must have length 2ML");
  std::vector<double> phases(n);
  for (std::size_t a = 0; a < n; ++a) phases[a] = std::atan2(x(n + a), x(a));
  return SequenceSet(num_sequences, length, std::move(phases));
}

cdouble SequenceSet::element(std::size_t i, std::size_t m) const {
  const double p = phase(i, m);
  return {std::cos(p), std::sin(p)};
}

std::vector<cdouble> SequenceSet::sequence(std::size_t i) const {
  std::vector<cdouble> out(length_);
  for (std::size_t m = 0; m < length_; ++m) out[m] = element(i, m);
  return out;
}

Eigen::VectorXcd SequenceSet::stacked() const {
  Eigen::VectorXcd s(static_cast<Eigen::Index>(stacked_size()));
  for (std::size_t a = 0; a < phases_.size(); ++a)
    s(static_cast<Eigen::Index>(a)) = cdouble(std::cos(phases_[a]), std::sin(phases_[a]));
  return s;
}

Eigen::VectorXd SequenceSet::real_stack() const {
  const auto n = static_cast<Eigen::Index>(stacked_size());
  Eigen::VectorXd x(2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    x(a) = std::cos(phases_[static_cast<std::size_t>(a)]);
    x(n + a) = std::sin(phases_[static_cast<std::size_t>(a)]);
  }
  return x;
}

}  // namespace pslset
