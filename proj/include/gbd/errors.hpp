#pragma once

#include <stdexcept>
#include <string>

namespace gbd {

// Exit-code taxonomy used by the CLI:
//   InputError (and subclasses)   -> 2
//   ResourceError                 -> 3
//   VerificationFailure           -> 1

/// Malformed or semantically invalid input (bad file, violated precondition).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph data that does not describe a multigraph (dangling endpoint, duplicate id).
class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

/// A point or path outside the domain of the requested map.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A divisibility-sequence level was requested beyond what the prefix and
/// extension policy provide.
class LevelError : public InputError {
 public:
  using InputError::InputError;
};

/// A configurable size guard (paths, matrix dimension, search size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed. Signals a bug, not bad input.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gbd
