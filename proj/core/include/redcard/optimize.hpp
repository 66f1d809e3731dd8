#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redcard/adjoint.hpp"
#include "redcard/cartan.hpp"
#include "redcard/pauli.hpp"

namespace redcard {

enum class BackendKind { exact, shots };
enum class AnsatzKind { standard, compressed };
enum class Method { redcard, standard };

std::string to_string(BackendKind kind);
std::string to_string(AnsatzKind kind);
std::string to_string(Method method);

/// Abstraction over the exact adjoint backend and the sampled backend.
/// The exact backend is deterministic; the sampled one is unbiased with a
/// per-evaluation noise scale estimate.
class CostEvaluator {
 public:
  virtual ~CostEvaluator() = default;

  double evaluate(const Ansatz& ansatz, const PauliString& b_r,
                  const PauliSum& h_r) {
    ++calls_;
    return do_evaluate(ansatz, b_r, h_r);
  }

  /// Standard deviation estimate for the most recent evaluation (0 when
  /// deterministic).
  virtual double noise_scale() const { return 0.0; }

  std::uint64_t call_count() const { return calls_; }
  void reset_count() { calls_ = 0; }

 private:
  virtual double do_evaluate(const Ansatz& ansatz, const PauliString& b_r,
                             const PauliSum& h_r) = 0;
  std::uint64_t calls_ = 0;
};

class ExactCostEvaluator final : public CostEvaluator {
 private:
  double do_evaluate(const Ansatz& ansatz, const PauliString& b_r,
                     const PauliSum& h_r) override {
    return cost_fr(ansatz, b_r, h_r);
  }
};

struct SynthesisConfig {
  std::uint64_t seed = 1;
  BackendKind backend = BackendKind::exact;
  std::uint64_t shots = 800;
  double depolarizing = 0.0;
  AnsatzKind ansatz = AnsatzKind::standard;

  /// A run converges once the transformed Hamiltonian's residual off h
  /// reaches this fraction.
  double target_residual = 0.01;
  /// Global cap on Rotosolve sweeps (each sweep updates every active angle).
  std::uint64_t max_sweeps = 100000;
  /// A fragment stops when one sweep improves the cost by less than
  /// improvement_tol * max(1, |cost|) (exact backend) ...
  double improvement_tol = 1e-10;
  /// ... or when this many consecutive sweeps fail to beat the best cost by
  /// more than the shot-noise scale (sampled backend).
  int patience = 3;
  /// Sinusoid amplitudes below this leave the angle untouched. The sampled
  /// backend widens it to twice the estimated shot noise.
  double flat_tol = 1e-12;
  /// Allowed residual weight anticommuting with a processed generator after
  /// its fragment completes; 0 picks a backend default (1e-3 exact, the
  /// staging entry tolerance for shots).
  double staging_tol = 0.0;

  std::size_t max_dla_dim = kDefaultMaxDlaDim;
  std::optional<PauliString> h_seed;
  std::vector<std::size_t> h_order;
};

struct TracePoint {
  std::uint32_t fragment = 0;  // 0-indexed subproblem
  double cost = 0.0;
  double residual = 0.0;
};

struct FragmentResult {
  std::vector<PauliString> factors;  // product order
  std::vector<double> angles;
  std::uint64_t sweeps = 0;
  bool converged = false;
  /// Largest residual weight anticommuting with any processed generator
  /// after this subproblem.
  double staging_residual = 0.0;
};

struct SynthesisResult {
  Method method = Method::redcard;
  std::uint32_t n_qubits = 0;
  std::size_t dla_dim = 0;
  std::size_t k_dim = 0;
  std::size_t m_dim = 0;
  std::vector<PauliString> h_basis;
  std::vector<PauliString> b_basis;
  std::vector<FragmentResult> fragments;
  /// The fully transformed Hamiltonian, including any weight left off h.
  PauliSum h_final{1};
  double final_residual = 0.0;
  std::vector<TracePoint> trace;
  std::uint64_t cost_calls = 0;
  std::uint64_t total_sweeps = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

struct RotosolveOutcome {
  double angle = 0.0;
  double predicted_min = 0.0;
  bool updated = false;
};

/// Closed-form single-angle update. The cost restricted to one angle is
/// a cos(2t) + b sin(2t) + c; three samples at t in {0, pi/4, pi/2} fix the
/// fit and the minimizer t* = atan2(-b, -a) / 2, normalized into [0, pi).
/// Amplitudes below flat_tol (or twice the sampled noise scale) keep the
/// current angle.
RotosolveOutcome rotosolve_angle(CostEvaluator& evaluator, Ansatz& ansatz,
                                 std::size_t index, const PauliString& b_r,
                                 const PauliSum& h_r, double flat_tol = 1e-12);

struct FragmentOutcome {
  std::vector<double> angles;
  PauliSum h_next{1};
  std::vector<TracePoint> trace;
  std::uint64_t sweeps = 0;
  std::uint64_t cost_calls = 0;
  bool converged = false;
  double staging_residual = 0.0;
};

/// Rotosolve sweeps over one subproblem until the stopping rule fires, then
/// applies the critical rotation classically: h_next = K† h_r K, always with
/// the exact backend. prior_b carries the already-processed generators for
/// the staging check; h_basis is used for the per-sweep residual trace.
FragmentOutcome minimize_fragment(CostEvaluator& evaluator, Ansatz& ansatz,
                                  const PauliString& b_r, const PauliSum& h_r,
                                  std::span<const PauliString> prior_b,
                                  std::span<const PauliString> h_basis,
                                  const SynthesisConfig& config,
                                  std::uint64_t sweep_budget,
                                  std::uint32_t fragment_index);

/// The sequential pipeline: algebra closure, Cartan split, subalgebra and
/// generator reduction, fragmentation, then one Rotosolve subproblem per
/// generator. Subproblems that fail to converge are flagged and the pipeline
/// continues.
SynthesisResult run_redcard(const PauliSum& hamiltonian,
                            const SynthesisConfig& config);

/// The one-shot baseline: a single Rotosolve optimization over all k angles
/// of <K v K†, H> with v a fixed dense-direction element of h. Exact backend
/// only.
SynthesisResult run_standard(const PauliSum& hamiltonian,
                             const SynthesisConfig& config);

}  // namespace redcard
