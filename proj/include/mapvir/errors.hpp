#pragma once

#include <stdexcept>
#include <string>

namespace mapvir {

/// Malformed input: bad spec files, unparsable expressions, violated
/// preconditions on user-supplied data. The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure raised while computing on valid input. CLI exit code 2.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgebraMismatch : public ComputationError {
 public:
  AlgebraMismatch() : ComputationError("operands belong to different algebras") {}
  using ComputationError::ComputationError;
};

/// A polynomial/laurent product or a sequence lookup left its degree window.
class WindowOverflow : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class InfiniteDimensionalAlgebra : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class ImproperIdeal : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class UnsupportedKind : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// A word letter passed to straightening has a component outside V_-.
class NotLowering : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class MissingWindow : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// |mode| exceeded the configured bound (see mode_max()).
class ModeRange : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace mapvir
