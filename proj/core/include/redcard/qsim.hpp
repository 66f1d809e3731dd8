#pragma once

#include <cstdint>
#include <vector>

#include "redcard/circuit.hpp"
#include "redcard/optimize.hpp"
#include "redcard/pauli.hpp"

namespace redcard {

struct ShotConfig {
  std::uint64_t shots_per_term = 800;
  std::uint64_t seed = 1;
  /// Uniform expectation-value damping in [0, 1]; 0 disables it.
  double depolarizing = 0.0;
};

/// Simulated measurement backend. For the mixed state (I + b_r)/2^n, the
/// expectation of each transformed term is the sum of its identity and b_r
/// coefficients, so exact per-term expectations come from one classical
/// conjugation; noise is injected by averaging +-1 samples per term. The
/// state itself is never materialized.
class ShotCostEvaluator final : public CostEvaluator {
 public:
  explicit ShotCostEvaluator(ShotConfig config);

  /// Estimated standard deviation of the most recent evaluation.
  double noise_scale() const override { return noise_scale_; }

 private:
  double do_evaluate(const Ansatz& ansatz, const PauliString& b_r,
                     const PauliSum& h_r) override;

  ShotConfig config_;
  double noise_scale_ = 0.0;
  std::uint64_t eval_index_ = 0;
};

/// One sampled estimate of the subproblem cost under the given shot budget.
/// Equal configurations give equal draws; advance the seed for fresh ones.
double estimate_cost(const Ansatz& ansatz, const PauliString& b_r,
                     const PauliSum& h_r, const ShotConfig& config);

/// Circuit preparing the mixed state (I + sigma)/2^n: Hadamards and
/// ancilla-entangling CNOTs scramble every qubit but the anchor, CNOTs fan
/// the anchor correlation out to the other support sites, and single-qubit
/// rotations fix the basis. Uses n + w - 2 CNOTs for a weight-w string.
/// With single_ancilla the one ancilla is reset between uses; otherwise
/// n - 1 ancillas are used without resets.
Circuit state_prep_circuit(const PauliString& sigma, bool single_ancilla = true);

struct DepolInvarianceReport {
  std::size_t angles_checked = 0;
  std::size_t skipped = 0;  // flat on both the clean and scaled paths
  double max_angle_deviation = 0.0;
  bool consistent = false;
};

/// Confirms on the infinite-shot path that uniformly damping expectation
/// values by (1 - lambda) leaves every Rotosolve minimizer unchanged: the
/// argmin of a scaled sinusoid does not move, flat fits stay skipped.
DepolInvarianceReport depolarizing_scale_invariance_check(
    const Ansatz& ansatz, const PauliString& b_r, const PauliSum& h_r,
    double lambda);

}  // namespace redcard
