#include "redcard/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>

#include "redcard/errors.hpp"

namespace redcard {

namespace {

using complexd = std::complex<double>;

constexpr complexd kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_dense_cap(std::uint32_t n_qubits, std::uint32_t cap) {
  if (n_qubits > cap) {
    throw CapacityError("register too wide for a dense matrix (" +
                            std::to_string(n_qubits) + " > " +
                            std::to_string(cap) + ")",
                        n_qubits);
  }
}

/// Scatters coeff * P into M. P acts as |s> -> i^{w_Y + phase} (-1)^{z.s} |s^x>.
void accumulate_pauli(DenseOperator& m, const PauliString& p, complexd coeff) {
  const std::uint64_t dim = 1ULL << p.n_qubits();
  const int base_phase =
      (std::popcount(p.x_bits() & p.z_bits()) + p.phase()) & 3;
  for (std::uint64_t s = 0; s < dim; ++s) {
    const int sign = std::popcount(p.z_bits() & s) & 1;
    const complexd entry = kIPowers[(base_phase + 2 * sign) & 3];
    m(static_cast<Eigen::Index>(s ^ p.x_bits()), static_cast<Eigen::Index>(s)) +=
        coeff * entry;
  }
}

DenseOperator single_qubit_embedded(std::uint32_t total, std::uint32_t q,
                                    const Eigen::Matrix2cd& u) {
  const std::uint64_t dim = 1ULL << total;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  const std::uint64_t bit = 1ULL << q;
  for (std::uint64_t s = 0; s < dim; ++s) {
    const std::uint64_t b = (s >> q) & 1;
    for (std::uint64_t a = 0; a < 2; ++a) {
      const std::uint64_t t = (s & ~bit) | (a << q);
      m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += u(a, b);
    }
  }
  return m;
}

DenseOperator cnot_matrix(std::uint32_t total, std::uint32_t control,
                          std::uint32_t target) {
  const std::uint64_t dim = 1ULL << total;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    const std::uint64_t t =
        ((s >> control) & 1) ? s ^ (1ULL << target) : s;
    m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = 1.0;
  }
  return m;
}

/// Rotation axes live on the physical register; pad with identities so they
/// act on the full (physical + ancilla) space.
PauliString pad_to(const PauliString& p, std::uint32_t total) {
  if (p.n_qubits() == total) return p;
  return PauliString(total, p.x_bits(), p.z_bits(),
                     static_cast<std::uint8_t>(p.phase()));
}

DenseOperator gate_unitary(const Circuit& circuit, const Gate& g) {
  const std::uint32_t total = circuit.total_qubits();
  const std::uint64_t dim = 1ULL << total;
  switch (g.kind) {
    case GateKind::pauli_rotation: {
      DenseOperator p = DenseOperator::Zero(dim, dim);
      accumulate_pauli(p, pad_to(*g.pauli, total), 1.0);
      return std::cos(g.angle / 2) * DenseOperator::Identity(dim, dim) -
             complexd(0, std::sin(g.angle / 2)) * p;
    }
    case GateKind::h: {
      Eigen::Matrix2cd u;
      u << 1, 1, 1, -1;
      return single_qubit_embedded(total, g.q0, u / std::sqrt(2.0));
    }
    case GateKind::s: {
      Eigen::Matrix2cd u;
      u << 1, 0, 0, complexd(0, 1);
      return single_qubit_embedded(total, g.q0, u);
    }
    case GateKind::sdg: {
      Eigen::Matrix2cd u;
      u << 1, 0, 0, complexd(0, -1);
      return single_qubit_embedded(total, g.q0, u);
    }
    case GateKind::cnot:
      return cnot_matrix(total, g.q0, g.q1);
    default:
      throw PreconditionError("gate has no unitary representation");
  }
}

}  // namespace

DenseOperator to_dense(const PauliString& p) {
  check_dense_cap(p.n_qubits(), kDenseCap);
  const std::uint64_t dim = 1ULL << p.n_qubits();
  DenseOperator m = DenseOperator::Zero(dim, dim);
  accumulate_pauli(m, p, 1.0);
  return m;
}

DenseOperator to_dense(const PauliSum& sum) {
  check_dense_cap(sum.n_qubits(), kDenseCap);
  const std::uint64_t dim = 1ULL << sum.n_qubits();
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& [p, c] : sum.terms()) accumulate_pauli(m, p, c);
  return m;
}

DenseOperator expm_i(const DenseOperator& h, double t) {
  if (h.rows() != h.cols()) {
    throw DimensionError("expm_i needs a square matrix");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw PreconditionError("expm_i needs a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    phases(i) = std::exp(complexd(0, -t * evals(i)));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

DenseOperator circuit_unitary(const Circuit& circuit) {
  if (circuit.n_ancillas != 0) {
    throw PreconditionError("circuit_unitary does not support ancillas");
  }
  check_dense_cap(circuit.n_qubits, kDenseCap);
  const std::uint64_t dim = 1ULL << circuit.n_qubits;
  DenseOperator u = DenseOperator::Identity(dim, dim);
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::barrier) continue;
    if (g.kind == GateKind::reset) {
      throw PreconditionError("reset is not unitary; use circuit_density");
    }
    u = gate_unitary(circuit, g) * u;
  }
  return u;
}

DenseOperator circuit_density(const Circuit& circuit) {
  const std::uint32_t total = circuit.total_qubits();
  check_dense_cap(total, kDensityCap);
  const std::uint64_t dim = 1ULL << total;
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::barrier) continue;
    if (g.kind == GateKind::reset) {
      // |0><0| rho |0><0| + |0><1| rho |1><0| on the reset qubit.
      const std::uint64_t bit = 1ULL << g.q0;
      DenseOperator next = DenseOperator::Zero(dim, dim);
      for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) {
          if (((r ^ c) & bit) != 0) continue;  // mixed sectors vanish
          next(static_cast<Eigen::Index>(r & ~bit),
               static_cast<Eigen::Index>(c & ~bit)) +=
              rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
      }
      rho = std::move(next);
      continue;
    }
    const DenseOperator u = gate_unitary(circuit, g);
    rho = u * rho * u.adjoint();
  }
  if (circuit.n_ancillas == 0) return rho;

  // Trace out the ancilla register (the high bits).
  const std::uint64_t phys_dim = 1ULL << circuit.n_qubits;
  const std::uint64_t anc_dim = 1ULL << circuit.n_ancillas;
  DenseOperator reduced = DenseOperator::Zero(phys_dim, phys_dim);
  for (std::uint64_t a = 0; a < anc_dim; ++a) {
    const std::uint64_t offset = a << circuit.n_qubits;
    for (std::uint64_t r = 0; r < phys_dim; ++r) {
      for (std::uint64_t c = 0; c < phys_dim; ++c) {
        reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            rho(static_cast<Eigen::Index>(r + offset),
                static_cast<Eigen::Index>(c + offset));
      }
    }
  }
  return reduced;
}

double unitary_distance(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("unitary_distance needs same-shape matrices");
  }
  const double sq = a.squaredNorm() + b.squaredNorm() -
                    2.0 * std::abs((a.adjoint() * b).trace());
  return std::sqrt(std::max(sq, 0.0));
}

}  // namespace redcard
