#pragma once

#include <stdexcept>
#include <string>

namespace spectral_gibbs {

/// Thrown when an exact operation would materialize more states than the
/// configured budget allows. The message names the budget and its value.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its input
/// (for example, symmetrizing a kernel that is not reversible).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace spectral_gibbs
