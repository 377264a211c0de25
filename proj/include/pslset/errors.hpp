#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pslset {

/// Raised when a computation produces non-finite or ill-conditioned values.
/// Carries the offending constraint column when one is known.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::size_t> constraint = std::nullopt)
      : std::runtime_error(what), constraint_(constraint) {}

  std::optional<std::size_t> constraint() const { return constraint_; }

 private:
  std::optional<std::size_t> constraint_;
};

/// Malformed input files (sequence JSON, scene JSON).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pslset
