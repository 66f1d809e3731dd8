#include "redcard/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include "redcard/errors.hpp"

namespace redcard {

Ansatz::Ansatz(std::vector<PauliString> factors, std::vector<double> angles,
               Direction direction)
    : factors_(std::move(factors)),
      angles_(std::move(angles)),
      direction_(direction) {
  if (factors_.size() != angles_.size()) {
    throw PreconditionError("factor/angle count mismatch");
  }
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (factors_[i].n_qubits() != factors_[0].n_qubits()) {
      throw DimensionError("ansatz factors differ in width");
    }
  }
}

Ansatz Ansatz::dagger() const {
  Ansatz out = *this;
  out.direction_ = direction_ == Direction::forward ? Direction::dagger
                                                    : Direction::forward;
  return out;
}

void apply_rotation(TermMap& terms, const PauliString& p, double t) {
  const double c2 = std::cos(2 * t);
  const double s2 = std::sin(2 * t);
  TermMap next;
  for (const auto& [q, coeff] : terms) {
    if (p.commutes_with(q)) {
      next[q] += coeff;
      continue;
    }
    const PauliString pq = multiply(p, q);
    // i * pq has an even i-power for anticommuting factors: a real sign.
    const double sign = ((pq.phase() + 1) & 3) == 0 ? 1.0 : -1.0;
    next[q] += coeff * c2;
    next[pq.canonical()] += coeff * s2 * sign;
  }
  terms.clear();
  for (const auto& [q, coeff] : next) {
    if (std::abs(coeff) >= kCoeffTol) terms.emplace_hint(terms.end(), q, coeff);
  }
}

PauliSum conjugate(const Ansatz& ansatz, const PauliSum& operand) {
  if (ansatz.size() > 0 &&
      ansatz.factor(0).n_qubits() != operand.n_qubits()) {
    throw DimensionError("ansatz and operand widths differ");
  }
  TermMap terms = operand.terms();
  if (ansatz.direction() == Direction::forward) {
    // K A K† with K = F_0 F_1 ... ; the innermost factor acts first.
    for (std::size_t i = ansatz.size(); i-- > 0;) {
      apply_rotation(terms, ansatz.factor(i), ansatz.angle(i));
    }
  } else {
    // K† A K: factors in listed order, with negated angles.
    for (std::size_t i = 0; i < ansatz.size(); ++i) {
      apply_rotation(terms, ansatz.factor(i), -ansatz.angle(i));
    }
  }
  PauliSum out(operand.n_qubits());
  for (const auto& [q, coeff] : terms) out.add(q, coeff);
  return out;
}

double inner(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("inner product widths differ");
  }
  // Iterate the smaller sum.
  const PauliSum& small = a.size() <= b.size() ? a : b;
  const PauliSum& large = a.size() <= b.size() ? b : a;
  double acc = 0.0;
  for (const auto& [p, c] : small.terms()) acc += c * large.coeff(p);
  return acc;
}

double anticommuting_fraction(const PauliSum& h, const PauliString& b) {
  double off_sq = 0.0;
  for (const auto& [p, c] : h.terms()) {
    if (!p.commutes_with(b)) off_sq += c * c;
  }
  const double norm = h.norm();
  return norm == 0.0 ? 0.0 : std::sqrt(off_sq) / norm;
}

double cost_fr(const Ansatz& ansatz, const PauliString& b_r,
               const PauliSum& h_r, std::span<const PauliString> prior_b) {
  for (const auto& b : prior_b) {
    if (anticommuting_fraction(h_r, b) > kStagingEntryTol) {
      throw StagingError("operand was not staged through generator " +
                         b.sparse_string());
    }
  }
  PauliSum probe(b_r.n_qubits());
  probe.add(b_r, 1.0);
  return inner(conjugate(ansatz, probe), h_r);
}

double cost_full(const Ansatz& ansatz, const PauliSum& v, const PauliSum& h,
                 std::span<const PauliString> h_basis) {
  for (const auto& [term, _] : v.terms()) {
    const bool in_h =
        std::any_of(h_basis.begin(), h_basis.end(), [&](const PauliString& p) {
          return p.x_bits() == term.x_bits() && p.z_bits() == term.z_bits();
        });
    if (!in_h) {
      throw PreconditionError("v has support outside the Abelian basis: " +
                              term.sparse_string());
    }
  }
  return inner(conjugate(ansatz, v), h);
}

double residual(const PauliSum& transformed,
                std::span<const PauliString> h_basis) {
  const double norm = transformed.norm();
  if (norm == 0.0) {
    throw PreconditionError("residual of a zero operator is undefined");
  }
  double off_sq = 0.0;
  for (const auto& [p, c] : transformed.terms()) {
    const bool in_h =
        std::any_of(h_basis.begin(), h_basis.end(), [&](const PauliString& q) {
          return q.x_bits() == p.x_bits() && q.z_bits() == p.z_bits();
        });
    if (!in_h) off_sq += c * c;
  }
  return std::sqrt(off_sq) / norm;
}

}  // namespace redcard
