#pragma once

#include <stdexcept>

namespace tcvqite {

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (non-convergence, non-finite values, rank collapse). Callers map this to
/// the numerical-failure exit status.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tcvqite
