#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsphere {

// Signed 128-bit accumulator for sums that outgrow int64 (S_k at T = 1e5
// reaches ~1e35).
__extension__ typedef __int128 Int128;

std::string to_string(Int128 value);

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request would exceed a compute or memory guard. `parameter`
/// names the offending input so callers (the CLI) can report it.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string parameter, const std::string& what)
      : std::runtime_error(what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// A numerical routine could not certify the requested tolerance.
class NotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsphere
