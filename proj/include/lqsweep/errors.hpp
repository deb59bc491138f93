#pragma once

#include <stdexcept>
#include <string>

namespace lqsweep {

// Base for every failure this library reports on purpose.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Linear algebra gave up: exact zero pivot or condition estimate above 1e12.
struct SingularMatrix : SolverError {
  explicit SingularMatrix(const std::string& what) : SolverError(what) {}
};

// An integrator state picked up a NaN or infinity.
struct NonFiniteState : SolverError {
  explicit NonFiniteState(const std::string& what) : SolverError(what) {}
};

// Infinite-horizon quadrature asked for a matrix whose exponential does not decay.
struct NotHurwitz : SolverError {
  explicit NotHurwitz(const std::string& what) : SolverError(what) {}
};

// Time outside the coverage of a sampled coefficient.
struct OutOfRange : SolverError {
  explicit OutOfRange(const std::string& what) : SolverError(what) {}
};

// Problem file could not be read as JSON with the expected fields.
struct ParseError : SolverError {
  explicit ParseError(const std::string& what) : SolverError(what) {}
};

// Dimensions disagree with the declared n, m, k.
struct ShapeError : SolverError {
  explicit ShapeError(const std::string& what) : SolverError(what) {}
};

// Caller broke a documented precondition (wrong coefficient class, bad N, ...).
struct PreconditionViolated : SolverError {
  explicit PreconditionViolated(const std::string& what) : SolverError(what) {}
};

}  // namespace lqsweep
