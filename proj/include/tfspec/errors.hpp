#pragma once

#include <stdexcept>

namespace tfspec {

// Invalid arguments or malformed input documents.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested mode is numerically unresolvable at the working precision.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative solve failed to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested frequency content exceeds what the sample grid can represent.
struct NyquistError : InputError {
  using InputError::InputError;
};

struct ZeroEnergyError : InputError {
  using InputError::InputError;
};

// Signal tails do not decay on the grid; moment integrals would be artifacts.
struct TailDecayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnstableSystemError : InputError {
  using InputError::InputError;
};

// Magnitude integral does not converge (relative degree below two).
struct NonIntegrableError : InputError {
  using InputError::InputError;
};

struct NoCrossingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The (alpha, beta) corners excluded by the admissibility theorem.
struct ExcludedPairError : InputError {
  using InputError::InputError;
};

struct MissingFieldError : InputError {
  using InputError::InputError;
};

}  // namespace tfspec
