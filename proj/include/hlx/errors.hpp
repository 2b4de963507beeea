#pragma once

#include <stdexcept>
#include <string>

namespace hlx {

/// Malformed grid or configuration (odd N, mismatched tori, bad dimension).
struct ConfigurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was handed data outside its domain (e.g. a field that is not
/// divergence-free).
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Operation not meaningful for this input shape (2-D only op called in 3-D,
/// empty series, zero resistivity where a positive one is required).
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Non-finite values appeared during time integration.
class DivergedRunError : public std::runtime_error {
 public:
  DivergedRunError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Unreadable, truncated or corrupt file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hlx
