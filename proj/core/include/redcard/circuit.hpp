#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redcard/pauli.hpp"

namespace redcard {

enum class GateKind { pauli_rotation, h, s, sdg, cnot, reset, barrier };

/// One gate of the circuit IR. pauli_rotation(P, theta) denotes
/// exp(-i theta/2 P); all other kinds are the usual primitives. Ancilla
/// qubits are addressed as n_qubits + k.
struct Gate {
  GateKind kind;
  std::uint32_t q0 = 0;
  std::uint32_t q1 = 0;  // target for cnot; unused otherwise
  std::optional<PauliString> pauli;
  double angle = 0.0;

  static Gate rotation(PauliString p, double angle);
  static Gate hadamard(std::uint32_t q) { return {GateKind::h, q, 0, {}, 0}; }
  static Gate s_gate(std::uint32_t q) { return {GateKind::s, q, 0, {}, 0}; }
  static Gate sdg_gate(std::uint32_t q) { return {GateKind::sdg, q, 0, {}, 0}; }
  static Gate cnot(std::uint32_t control, std::uint32_t target) {
    return {GateKind::cnot, control, target, {}, 0};
  }
  static Gate reset(std::uint32_t q) { return {GateKind::reset, q, 0, {}, 0}; }
  static Gate barrier() { return {GateKind::barrier, 0, 0, {}, 0}; }
};

struct Circuit {
  std::uint32_t n_qubits = 0;
  std::uint32_t n_ancillas = 0;
  std::vector<Gate> gates;

  std::uint32_t total_qubits() const { return n_qubits + n_ancillas; }

  /// Appends a gate after validating its qubit indices.
  void push(Gate gate);

  std::size_t count(GateKind kind) const;
  std::size_t cnot_count() const { return count(GateKind::cnot); }
};

/// Serializes to the QASM dialect documented in the README (a QASM 2 subset
/// plus reset). Pauli rotations are lowered to basis changes, a CNOT ladder,
/// one rz, and the mirrored tail; a weight-w rotation costs 2(w-1) CNOTs.
std::string export_qasm(const Circuit& circuit);

/// Parses text produced by export_qasm back into a primitive-gate circuit
/// (rz becomes a weight-1 Z rotation; the grouping of lowered rotations is
/// not reconstructed).
Circuit parse_qasm(std::string_view text);

}  // namespace redcard
