#pragma once

#include <stdexcept>
#include <string>

namespace schubert {

/// Precondition violation on a mathematical domain (bad shape, repeated
/// parameters, t-value landing on a pole of the master function, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Floating point cell detection could not separate competing degree
/// sequences within the pivot tolerance.
struct CellUndecidableError : std::runtime_error {
  explicit CellUndecidableError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The triangular linear system of the coordinate-map inversion is singular.
struct ReconstructionError : std::runtime_error {
  explicit ReconstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Newton iteration or path continuation failed to converge.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A family of operators failed a commutativity or simple-spectrum check.
struct SpectrumError : std::runtime_error {
  explicit SpectrumError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace schubert
