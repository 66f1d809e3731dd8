#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "redcard/circuit.hpp"
#include "redcard/pauli.hpp"

namespace redcard {

/// A 2^n x 2^n complex matrix. Qubit q maps to bit q of the basis index
/// (qubit 0 is the least significant bit).
using DenseOperator = Eigen::MatrixXcd;

/// Widest register materialized as a dense matrix.
inline constexpr std::uint32_t kDenseCap = 10;
/// Widest total register (physical + ancilla) for density-matrix simulation.
inline constexpr std::uint32_t kDensityCap = 12;

DenseOperator to_dense(const PauliString& p);
DenseOperator to_dense(const PauliSum& sum);

/// exp(-i t h) of a Hermitian matrix via eigendecomposition.
DenseOperator expm_i(const DenseOperator& h, double t);

/// Unitary of a reset-free circuit (ancillas are not allowed here).
DenseOperator circuit_unitary(const Circuit& circuit);

/// Runs the circuit on |0...0><0...0| as a density matrix, applying resets as
/// channels, then traces out the ancilla register. Returns the reduced state
/// on the physical qubits.
DenseOperator circuit_density(const Circuit& circuit);

/// Global-phase-invariant Frobenius distance
/// min over phi of ||a - e^{i phi} b||_F.
double unitary_distance(const DenseOperator& a, const DenseOperator& b);

}  // namespace redcard
