#pragma once

#include <stdexcept>

namespace fwlab {

/// Input contained NaN/Inf, or a computation produced one.
struct numeric_fault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid too coarse in frequency for the requested construction.
struct insufficient_resolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested spectral content does not fit below the grid Nyquist.
struct frequency_overflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A feature would leave the periodic window it has to stay inside.
struct out_of_window : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment parameters violate the regime the runner is valid in.
struct hypothesis_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Successive-approximation scheme stopped contracting.
struct divergence_detected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A run stopped on the wave-breaking guard before reaching the time a
/// caller needed.
struct breaking_before_probe : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Report emission could not write its output.
struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fwlab
