#pragma once

#include <stdexcept>
#include <string>

namespace tenrad {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid radar configuration (bad dimensions, positions, schedules).
struct config_error : error {
  using error::error;
};

/// Tensor/matrix dimension mismatch.
struct shape_error : error {
  using error::error;
};

/// Index triple outside its grid.
struct index_error : error {
  using error::error;
};

/// Target parameter not representable on the grid.
struct grid_error : error {
  using error::error;
};

/// Invalid scalar argument (non-finite SNR, empty trial list, ...).
struct argument_error : error {
  using error::error;
};

/// Waveform orthogonality violated: observation triples collide.
struct ambiguity_error : error {
  using error::error;
};

/// Rank-deficient least-squares system in the greedy solver.
struct singularity_error : error {
  using error::error;
};

/// NaN/Inf encountered in solver iterates.
struct numerical_error : error {
  using error::error;
};

/// Degenerate factor vector, no pole can be estimated.
struct extraction_error : error {
  using error::error;
};

/// Requested computation exceeds the supported instance size.
struct capability_error : error {
  using error::error;
};

/// File read/write failure.
struct io_error : error {
  using error::error;
};

}  // namespace tenrad
