#include "redcard/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "redcard/adjoint.hpp"
#include "redcard/errors.hpp"

namespace redcard {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ShotCostEvaluator::ShotCostEvaluator(ShotConfig config) : config_(config) {
  if (config_.shots_per_term == 0) {
    throw PreconditionError("at least one shot per term is required");
  }
  if (config_.depolarizing < 0.0 || config_.depolarizing > 1.0) {
    throw PreconditionError("depolarizing scale must lie in [0, 1]");
  }
}

double ShotCostEvaluator::do_evaluate(const Ansatz& ansatz,
                                      const PauliString& b_r,
                                      const PauliSum& h_r) {
  // <K† P K> on (I + b_r)/2^n equals the b_r coefficient of K† P K, which by
  // invariance of the trace form is the P coefficient of K b_r K†. One
  // conjugation therefore yields every per-term expectation.
  PauliSum probe(b_r.n_qubits());
  probe.add(b_r, 1.0);
  const PauliSum rotated = conjugate(ansatz, probe);

  const double damping = 1.0 - config_.depolarizing;
  const std::uint64_t shots = config_.shots_per_term;

  double value = 0.0;
  double variance = 0.0;
  std::size_t term_index = 0;
  for (const auto& [p, c] : h_r.terms()) {
    double expectation =
        (p.is_identity() ? 1.0 : 0.0) + rotated.coeff(p);
    expectation *= damping;
    if (std::abs(expectation) > 1.0 + 1e-9) {
      throw ConsistencyError("per-term expectation left [-1, 1]");
    }
    expectation = std::clamp(expectation, -1.0, 1.0);

    // Independent stream per (evaluation, term), stable under reordering.
    std::mt19937_64 rng(splitmix64(config_.seed ^
                                   splitmix64(eval_index_ * 0x10001ULL +
                                              term_index)));
    std::binomial_distribution<std::uint64_t> dist(shots,
                                                   (1.0 + expectation) / 2.0);
    const std::uint64_t ups = dist(rng);
    const double mean =
        (2.0 * static_cast<double>(ups) - static_cast<double>(shots)) /
        static_cast<double>(shots);
    value += c * mean;
    variance += c * c * (1.0 - expectation * expectation) /
                static_cast<double>(shots);
    ++term_index;
  }
  noise_scale_ = std::sqrt(variance);
  ++eval_index_;
  return value;
}

double estimate_cost(const Ansatz& ansatz, const PauliString& b_r,
                     const PauliSum& h_r, const ShotConfig& config) {
  ShotCostEvaluator evaluator(config);
  return evaluator.evaluate(ansatz, b_r, h_r);
}

Circuit state_prep_circuit(const PauliString& sigma, bool single_ancilla) {
  if (sigma.is_identity()) {
    throw PreconditionError(
        "the identity state (I/2^n) needs no preparation circuit");
  }
  const std::uint32_t n = sigma.n_qubits();

  std::vector<std::uint32_t> support;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (sigma.site(q) != 'I') support.push_back(q);
  }
  const std::uint32_t anchor = support.front();

  Circuit circuit;
  circuit.n_qubits = n;
  circuit.n_ancillas = single_ancilla ? 1 : n - 1;
  if (n == 1) circuit.n_ancillas = 0;

  // Every qubit but the anchor is maximally mixed by entangling it with an
  // ancilla that is later traced out.
  for (std::uint32_t q = 0; q < n; ++q) {
    if (q == anchor) continue;
    circuit.push(Gate::hadamard(q));
  }
  std::uint32_t next_ancilla = 0;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (q == anchor) continue;
    const std::uint32_t ancilla = n + (single_ancilla ? 0 : next_ancilla++);
    circuit.push(Gate::cnot(q, ancilla));
    if (single_ancilla) circuit.push(Gate::reset(ancilla));
  }

  // Correlate the remaining support sites with the anchor.
  for (std::size_t i = 1; i < support.size(); ++i) {
    circuit.push(Gate::cnot(support[i], anchor));
  }

  // Rotate each support site from Z into its letter's basis.
  for (std::uint32_t q : support) {
    switch (sigma.site(q)) {
      case 'X':
        circuit.push(Gate::hadamard(q));
        break;
      case 'Y':
        circuit.push(Gate::hadamard(q));
        circuit.push(Gate::s_gate(q));
        break;
      default:
        break;
    }
  }
  return circuit;
}

DepolInvarianceReport depolarizing_scale_invariance_check(
    const Ansatz& ansatz, const PauliString& b_r, const PauliSum& h_r,
    double lambda) {
  if (lambda <= 0.0 || lambda >= 1.0) {
    throw PreconditionError("lambda must lie strictly inside (0, 1)");
  }

  // Infinite-shot path: the exact cost, uniformly damped.
  class ScaledExactEvaluator final : public CostEvaluator {
   public:
    explicit ScaledExactEvaluator(double damping) : damping_(damping) {}

   private:
    double do_evaluate(const Ansatz& ansatz, const PauliString& b_r,
                       const PauliSum& h_r) override {
      return damping_ * cost_fr(ansatz, b_r, h_r);
    }
    double damping_;
  };

  ScaledExactEvaluator clean(1.0);
  ScaledExactEvaluator scaled(1.0 - lambda);

  DepolInvarianceReport report;
  report.consistent = true;
  const double flat_tol = 1e-12;
  for (std::size_t j = 0; j < ansatz.size(); ++j) {
    Ansatz clean_copy = ansatz;
    Ansatz scaled_copy = ansatz;
    const auto clean_step =
        rotosolve_angle(clean, clean_copy, j, b_r, h_r, flat_tol);
    const auto scaled_step =
        rotosolve_angle(scaled, scaled_copy, j, b_r, h_r, flat_tol);
    ++report.angles_checked;
    if (!clean_step.updated && !scaled_step.updated) {
      ++report.skipped;
      continue;
    }
    if (clean_step.updated != scaled_step.updated) {
      // The damped amplitude can dip below the flat tolerance while the
      // clean one stays above; both staying put is the invariant we track.
      if (!scaled_step.updated) {
        ++report.skipped;
        continue;
      }
      report.consistent = false;
      continue;
    }
    double delta = std::abs(clean_step.angle - scaled_step.angle);
    // Angles live on a period-pi circle.
    delta = std::min(delta, std::numbers::pi - delta);
    report.max_angle_deviation = std::max(report.max_angle_deviation, delta);
    if (delta > 1e-9) report.consistent = false;
  }
  return report;
}

}  // namespace redcard
