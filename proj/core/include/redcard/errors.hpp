#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redcard {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Qubit-count or matrix-shape mismatch between operands.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

/// A generated basis exceeded its configured dimension cap. Carries the
/// partial dimension reached before the cap was hit.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& message, std::size_t partial_dim)
      : Error(message), partial_dim_(partial_dim) {}
  std::size_t partial_dim() const { return partial_dim_; }

 private:
  std::size_t partial_dim_;
};

/// The chosen involution is incompatible with the Hamiltonian (a term landed
/// on the wrong side of the split).
class InvolutionError : public Error {
 public:
  explicit InvolutionError(const std::string& message) : Error(message) {}
};

/// A structural invariant that should hold by construction was violated.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& message) : Error(message) {}
};

/// An operand was handed to a pipeline stage before the previous stage
/// established the required commutation structure.
class StagingError : public Error {
 public:
  explicit StagingError(const std::string& message) : Error(message) {}
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error(message) {}
};

/// The requested ansatz or circuit form does not apply to this structure.
class UnsupportedAnsatzError : public Error {
 public:
  explicit UnsupportedAnsatzError(const std::string& message)
      : Error(message) {}
};

}  // namespace redcard
