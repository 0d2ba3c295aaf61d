#pragma once

#include <stdexcept>
#include <string>

namespace ommsim {

/// Drift matrix has a non-negative spectral abscissa; no stationary state.
struct StabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A dense solver failed (non-convergence, singular triangular factor, NaN).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad run configuration (unknown key, malformed value, violated invariant).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ommsim
