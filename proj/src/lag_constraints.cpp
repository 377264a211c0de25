#include "pslset/lag_constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace pslset {

bool LagConstraintSet::admissible(const LagConstraint& c, std::size_t num_sequences,
                                  std::size_t length) {
  if (c.i >= num_sequences || c.j >= num_sequences || c.k >= length) return false;
  return c.i != c.j || c.k >= 1;
}

LagConstraintSet LagConstraintSet::all(std::size_t num_sequences, std::size_t length) {
  std::vector<LagConstraint> cs;
  cs.reserve(num_sequences * (length - 1) + num_sequences * (num_sequences - 1) * length);
  for (std::size_t i = 0; i < num_sequences; ++i)
    for (std::size_t j = 0; j < num_sequences; ++j)
      for (std::size_t k = (i == j ? 1 : 0); k < length; ++k) cs.push_back({i, j, k});
  return LagConstraintSet(num_sequences, length, std::move(cs));
}

LagConstraintSet::LagConstraintSet(std::size_t num_sequences, std::size_t length,
                                   std::vector<LagConstraint> constraints)
    : num_sequences_(num_sequences), length_(length), constraints_(std::move(constraints)) {
  if (num_sequences < 1 || length < 2)
    throw std::invalid_argument("LagConstraintSet: need L >= 1 and M >= 2");
  for (const auto& c : constraints_)
    if (!admissible(c, num_sequences, length))
      throw std::invalid_argument("LagConstraintSet: inadmissible (i, j, k)");

  std::vector<std::size_t> keys;
  keys.reserve(constraints_.size());
  for (const auto& c : constraints_) keys.push_back((c.i * num_sequences + c.j) * length + c.k);
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::invalid_argument("LagConstraintSet: duplicate (i, j, k)");
}

LagConstraintSet LagConstraintSet::subset(const std::vector<std::size_t>& positions) const {
  std::vector<LagConstraint> picked;
  picked.reserve(positions.size());
  for (std::size_t n : positions) {
    if (n >= constraints_.size()) throw std::out_of_range("LagConstraintSet::subset: bad position");
    picked.push_back(constraints_[n]);
  }
  return LagConstraintSet(num_sequences_, length_, std::move(picked));
}

}  // namespace pslset
