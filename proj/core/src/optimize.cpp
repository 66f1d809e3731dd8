#include "redcard/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "redcard/errors.hpp"
#include "redcard/qsim.hpp"

namespace redcard {

std::string to_string(BackendKind kind) {
  return kind == BackendKind::exact ? "exact" : "shots";
}

std::string to_string(AnsatzKind kind) {
  return kind == AnsatzKind::standard ? "standard" : "compressed";
}

std::string to_string(Method method) {
  return method == Method::redcard ? "redcard" : "standard";
}

namespace {

constexpr double kPi = std::numbers::pi;

/// Uniform angle in [0, pi) built from the raw engine output, so results do
/// not depend on the standard library's distribution implementations.
double uniform_angle(std::mt19937_64& rng) {
  return kPi * static_cast<double>(rng() >> 11) * 0x1p-53;
}

/// staging_tol == 0 resolves to a backend default: the exact path converges
/// to tiny leftovers, the sampled one plateaus at the shot-noise floor.
double resolve_staging_tol(const SynthesisConfig& config) {
  if (config.staging_tol > 0.0) return config.staging_tol;
  return config.backend == BackendKind::exact ? 1e-3 : kStagingEntryTol;
}

struct SinusoidFit {
  double a = 0, b = 0, c = 0;  // a cos(2t) + b sin(2t) + c
  double amplitude() const { return std::hypot(a, b); }
  double minimum() const { return c - amplitude(); }
  double minimizer() const {
    double theta = std::atan2(-b, -a) / 2;
    return theta < 0 ? theta + kPi : theta;
  }
};

SinusoidFit fit_three_point(double f0, double f_quarter, double f_half) {
  SinusoidFit fit;
  fit.c = (f0 + f_half) / 2;
  fit.a = f0 - fit.c;
  fit.b = f_quarter - fit.c;
  return fit;
}

struct SweepStep {
  double predicted_min = 0.0;
  double noise = 0.0;
  /// K† target K at the committed angles, when the engine tracks it.
  std::optional<PauliSum> transformed;
};

/// One full pass over every angle of the ansatz.
class SweepEngine {
 public:
  virtual ~SweepEngine() = default;
  virtual SweepStep sweep(Ansatz& ansatz) = 0;
  virtual std::uint64_t calls() const = 0;
};

/// Generic path through a CostEvaluator; used by the sampled backend and by
/// callers that bring their own evaluator.
class GenericSweepEngine final : public SweepEngine {
 public:
  GenericSweepEngine(CostEvaluator& evaluator, const PauliString& b_r,
                     const PauliSum& h_r, double flat_tol)
      : evaluator_(evaluator),
        b_r_(b_r),
        h_r_(h_r),
        flat_tol_(flat_tol),
        start_calls_(evaluator.call_count()) {}

  SweepStep sweep(Ansatz& ansatz) override {
    SweepStep step;
    for (std::size_t j = 0; j < ansatz.size(); ++j) {
      const auto outcome =
          rotosolve_angle(evaluator_, ansatz, j, b_r_, h_r_, flat_tol_);
      step.predicted_min = outcome.predicted_min;
      step.noise = std::max(step.noise, evaluator_.noise_scale());
    }
    return step;
  }

  std::uint64_t calls() const override {
    return evaluator_.call_count() - start_calls_;
  }

 private:
  CostEvaluator& evaluator_;
  const PauliString& b_r_;
  const PauliSum& h_r_;
  double flat_tol_;
  std::uint64_t start_calls_;
};

/// Exact path exploiting the sweep order: with K = F_0 ... F_{N-1}, the cost
/// at angle j is <F_j S F_j†, G> where S carries the factors after j applied
/// to the probe and G the inverted factors before j applied to the target.
/// Both contexts update with one rotation per step, so each of the three
/// samples costs O(terms) rather than O(factors * terms). After the last
/// angle G equals K† target K at the committed angles and is handed back.
class ExactSweepEngine final : public SweepEngine {
  // Sorted coefficient vectors keep this hot path allocation-light.
  using TermVec = std::vector<std::pair<PauliString, double>>;

 public:
  ExactSweepEngine(const PauliSum& probe, const PauliSum& target,
                   double flat_tol)
      : probe_(to_vec(probe.terms())),
        target_(to_vec(target.terms())),
        n_qubits_(probe.n_qubits()),
        flat_tol_(flat_tol) {}

  SweepStep sweep(Ansatz& ansatz) override {
    const std::size_t n = ansatz.size();
    // suffix_for[j]: the probe conjugated by factors j+1 .. n-1 at their
    // values when the sweep starts (they only change after we pass them).
    std::vector<TermVec> suffix_for(n);
    TermVec cur = probe_;
    for (std::size_t j = n; j-- > 0;) {
      suffix_for[j] = cur;
      if (j > 0) {
        rotate(cur, ansatz.factor(j), ansatz.angle(j), rotated_);
        cur.swap(rotated_);
      }
    }

    TermVec g = target_;
    SweepStep step;
    for (std::size_t j = 0; j < n; ++j) {
      const PauliString& p = ansatz.factor(j);
      const double f0 = sample(suffix_for[j], p, 0.0, g);
      const double f1 = sample(suffix_for[j], p, kPi / 4, g);
      const double f2 = sample(suffix_for[j], p, kPi / 2, g);
      const SinusoidFit fit = fit_three_point(f0, f1, f2);
      step.predicted_min = fit.minimum();
      if (!(std::abs(fit.a) < flat_tol_ && std::abs(fit.b) < flat_tol_)) {
        ansatz.set_angle(j, fit.minimizer());
      }
      rotate(g, p, -ansatz.angle(j), rotated_);
      g.swap(rotated_);
    }

    PauliSum transformed(n_qubits_);
    for (const auto& [q, coeff] : n == 0 ? target_ : g) {
      transformed.add(q, coeff);
    }
    step.transformed = std::move(transformed);
    return step;
  }

  std::uint64_t calls() const override { return calls_; }

 private:
  static TermVec to_vec(const TermMap& terms) {
    return TermVec(terms.begin(), terms.end());
  }

  /// out = exp(i t p) in exp(-i t p), keeping out sorted.
  void rotate(const TermVec& in, const PauliString& p, double t,
              TermVec& out) {
    const double c2 = std::cos(2 * t);
    const double s2 = std::sin(2 * t);
    kept_.clear();
    mixed_.clear();
    for (const auto& [q, coeff] : in) {
      if (p.commutes_with(q)) {
        kept_.emplace_back(q, coeff);
        continue;
      }
      const PauliString pq = multiply(p, q);
      const double sign = ((pq.phase() + 1) & 3) == 0 ? 1.0 : -1.0;
      kept_.emplace_back(q, coeff * c2);
      mixed_.emplace_back(pq.canonical(), coeff * s2 * sign);
    }
    std::sort(mixed_.begin(), mixed_.end(), [](const auto& a, const auto& b) {
      return CanonicalLess{}(a.first, b.first);
    });
    out.clear();
    auto push = [&out](const PauliString& q, double coeff) {
      if (std::abs(coeff) < kCoeffTol) return;
      if (!out.empty() && out.back().first.z_bits() == q.z_bits() &&
          out.back().first.x_bits() == q.x_bits()) {
        out.back().second += coeff;
        if (std::abs(out.back().second) < kCoeffTol) out.pop_back();
        return;
      }
      out.emplace_back(q, coeff);
    };
    std::size_t i = 0, j = 0;
    while (i < kept_.size() || j < mixed_.size()) {
      if (j >= mixed_.size() ||
          (i < kept_.size() &&
           CanonicalLess{}(kept_[i].first, mixed_[j].first))) {
        push(kept_[i].first, kept_[i].second);
        ++i;
      } else if (i >= kept_.size() ||
                 CanonicalLess{}(mixed_[j].first, kept_[i].first)) {
        push(mixed_[j].first, mixed_[j].second);
        ++j;
      } else {
        push(kept_[i].first, kept_[i].second + mixed_[j].second);
        ++i;
        ++j;
      }
    }
  }

  double sample(const TermVec& suffix, const PauliString& p, double theta,
                const TermVec& g) {
    ++calls_;
    rotate(suffix, p, theta, rotated_);
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < rotated_.size() && j < g.size()) {
      if (CanonicalLess{}(rotated_[i].first, g[j].first)) {
        ++i;
      } else if (CanonicalLess{}(g[j].first, rotated_[i].first)) {
        ++j;
      } else {
        acc += rotated_[i].second * g[j].second;
        ++i;
        ++j;
      }
    }
    return acc;
  }

  TermVec probe_;
  TermVec target_;
  TermVec kept_, mixed_, rotated_;
  std::uint32_t n_qubits_;
  double flat_tol_;
  std::uint64_t calls_ = 0;
};

FragmentOutcome minimize_fragment_impl(SweepEngine& engine, Ansatz& ansatz,
                                       const PauliString& b_r,
                                       const PauliSum& h_r,
                                       std::span<const PauliString> prior_b,
                                       std::span<const PauliString> h_basis,
                                       const SynthesisConfig& config,
                                       std::uint64_t sweep_budget,
                                       std::uint32_t fragment_index,
                                       bool enforce_staging = true) {
  if (enforce_staging) {
    for (const auto& b : prior_b) {
      if (anticommuting_fraction(h_r, b) > kStagingEntryTol) {
        throw StagingError("operand was not staged through generator " +
                           b.sparse_string());
      }
    }
  }

  FragmentOutcome outcome;
  if (ansatz.size() == 0) {
    outcome.angles = {};
    outcome.h_next = h_r;
    outcome.converged = true;
    return outcome;
  }
  if (sweep_budget == 0) {
    // Budget exhausted before this subproblem: leave it at the identity so
    // the operand passes through untouched.
    for (std::size_t j = 0; j < ansatz.size(); ++j) ansatz.set_angle(j, 0.0);
    outcome.angles = ansatz.angles();
    outcome.h_next = h_r;
    outcome.converged = false;
    return outcome;
  }

  double best = std::numeric_limits<double>::infinity();
  double prev_sweep_cost = std::numeric_limits<double>::infinity();
  int stalled = 0;
  bool converged = false;
  std::optional<PauliSum> last_transformed;

  while (outcome.sweeps < sweep_budget) {
    SweepStep step = engine.sweep(ansatz);
    ++outcome.sweeps;

    // Residual trace uses the exact classical path regardless of backend.
    if (step.transformed.has_value()) {
      last_transformed = std::move(step.transformed);
    } else {
      last_transformed = conjugate(ansatz.dagger(), h_r);
    }
    outcome.trace.push_back({fragment_index, step.predicted_min,
                             residual(*last_transformed, h_basis)});

    if (step.noise == 0.0) {
      // Deterministic: stop once a sweep no longer makes progress.
      if (prev_sweep_cost - step.predicted_min <
          config.improvement_tol * std::max(1.0, std::abs(prev_sweep_cost))) {
        converged = true;
        break;
      }
    } else {
      if (step.predicted_min < best - step.noise) {
        best = step.predicted_min;
        stalled = 0;
      } else if (++stalled >= config.patience) {
        converged = true;
        break;
      }
    }
    prev_sweep_cost = step.predicted_min;
  }

  outcome.angles = ansatz.angles();
  outcome.h_next = last_transformed.has_value()
                       ? std::move(*last_transformed)
                       : conjugate(ansatz.dagger(), h_r);
  outcome.converged = converged;
  outcome.cost_calls = engine.calls();

  double staging = 0.0;
  for (const auto& b : prior_b) {
    staging = std::max(staging, anticommuting_fraction(outcome.h_next, b));
  }
  staging = std::max(staging, anticommuting_fraction(outcome.h_next, b_r));
  outcome.staging_residual = staging;
  if (staging > resolve_staging_tol(config)) outcome.converged = false;
  return outcome;
}

}  // namespace

RotosolveOutcome rotosolve_angle(CostEvaluator& evaluator, Ansatz& ansatz,
                                 std::size_t index, const PauliString& b_r,
                                 const PauliSum& h_r, double flat_tol) {
  const double original = ansatz.angle(index);
  double max_noise = 0.0;
  auto evaluate_at = [&](double angle) {
    ansatz.set_angle(index, angle);
    const double value = evaluator.evaluate(ansatz, b_r, h_r);
    max_noise = std::max(max_noise, evaluator.noise_scale());
    return value;
  };
  const double f0 = evaluate_at(0.0);
  const double f1 = evaluate_at(kPi / 4);
  const double f2 = evaluate_at(kPi / 2);
  const SinusoidFit fit = fit_three_point(f0, f1, f2);

  RotosolveOutcome outcome;
  outcome.predicted_min = fit.minimum();
  const double tol = std::max(flat_tol, 2.0 * max_noise);
  if (std::abs(fit.a) < tol && std::abs(fit.b) < tol) {
    // Flat sinusoid: a noisy fit should not drive a jump.
    ansatz.set_angle(index, original);
    outcome.angle = original;
    outcome.updated = false;
    return outcome;
  }
  const double theta = fit.minimizer();
  ansatz.set_angle(index, theta);
  outcome.angle = theta;
  outcome.updated = true;
  return outcome;
}

FragmentOutcome minimize_fragment(CostEvaluator& evaluator, Ansatz& ansatz,
                                  const PauliString& b_r, const PauliSum& h_r,
                                  std::span<const PauliString> prior_b,
                                  std::span<const PauliString> h_basis,
                                  const SynthesisConfig& config,
                                  std::uint64_t sweep_budget,
                                  std::uint32_t fragment_index) {
  GenericSweepEngine engine(evaluator, b_r, h_r, config.flat_tol);
  return minimize_fragment_impl(engine, ansatz, b_r, h_r, prior_b, h_basis,
                                config, sweep_budget, fragment_index);
}

namespace {

/// Fragment ansatz factor lists. The standard layout takes the fragment's
/// strings in canonical order. The compressed layout applies only to the
/// transverse-field XY class (all generators single-site Z in ascending site
/// order) and replaces subproblem r by the descending nearest-neighbour
/// doublet chain on sites (l-2,l-1) ... (r, r+1).
std::vector<PauliString> fragment_factors(const CartanStructure& cs,
                                          std::size_t r, AnsatzKind kind,
                                          std::uint32_t n_qubits) {
  if (kind == AnsatzKind::standard) return cs.fragments[r];

  const std::uint32_t l = n_qubits;
  if (cs.b_basis.size() != l) {
    throw UnsupportedAnsatzError(
        "compressed ansatz needs one single-site Z generator per site");
  }
  for (std::uint32_t i = 0; i < l; ++i) {
    const PauliString expected = PauliString::from_sites(l, {{i, 'Z'}});
    if (cs.b_basis[i].x_bits() != expected.x_bits() ||
        cs.b_basis[i].z_bits() != expected.z_bits()) {
      throw UnsupportedAnsatzError(
          "compressed ansatz needs generators Z_1..Z_l in site order");
    }
  }
  if (cs.fragments[r].size() != 2 * (l - 1 - r)) {
    throw UnsupportedAnsatzError(
        "fragment sizes do not match the transverse-field XY pattern");
  }
  std::vector<PauliString> chain;
  for (std::uint32_t j = l - 1; j > r; --j) {
    chain.push_back(PauliString::from_sites(l, {{j - 1, 'X'}, {j, 'Y'}}));
    chain.push_back(PauliString::from_sites(l, {{j - 1, 'Y'}, {j, 'X'}}));
  }
  return chain;
}

}  // namespace

SynthesisResult run_redcard(const PauliSum& hamiltonian,
                            const SynthesisConfig& config) {
  const Dla dla = generate_dla(hamiltonian, config.max_dla_dim);
  CartanOptions cartan_options;
  cartan_options.h_seed = config.h_seed;
  cartan_options.h_order = config.h_order;
  const CartanStructure cs =
      build_cartan_structure(dla, hamiltonian, cartan_options);

  SynthesisResult result;
  result.method = Method::redcard;
  result.n_qubits = hamiltonian.n_qubits();
  result.dla_dim = dla.dim();
  result.k_dim = cs.k_basis.size();
  result.m_dim = cs.m_basis.size();
  result.h_basis = cs.h_basis;
  result.b_basis = cs.b_basis;
  result.seed = config.seed;

  std::unique_ptr<ShotCostEvaluator> shot_evaluator;
  if (config.backend == BackendKind::shots) {
    ShotConfig shot_config;
    shot_config.shots_per_term = config.shots;
    shot_config.seed = config.seed;
    shot_config.depolarizing = config.depolarizing;
    shot_evaluator = std::make_unique<ShotCostEvaluator>(shot_config);
  }

  std::mt19937_64 rng(config.seed);
  PauliSum h_r = hamiltonian;
  std::vector<PauliString> prior_b;
  // The staging guard only makes sense while every earlier subproblem has
  // actually been applied; after a budget exhaustion the pipeline carries
  // the accrued error forward and just marks the fragments.
  bool pipeline_intact = true;
  for (std::size_t r = 0; r < cs.b_basis.size(); ++r) {
    FragmentResult frag;
    frag.factors = fragment_factors(cs, r, config.ansatz, result.n_qubits);

    std::vector<double> init(frag.factors.size());
    for (double& a : init) a = uniform_angle(rng);
    Ansatz ansatz(frag.factors, init);

    const std::uint64_t budget =
        config.max_sweeps > result.total_sweeps
            ? config.max_sweeps - result.total_sweeps
            : 0;

    FragmentOutcome outcome = [&] {
      if (config.backend == BackendKind::exact) {
        PauliSum probe(result.n_qubits);
        probe.add(cs.b_basis[r], 1.0);
        ExactSweepEngine engine(probe, h_r, config.flat_tol);
        return minimize_fragment_impl(engine, ansatz, cs.b_basis[r], h_r,
                                      prior_b, cs.h_basis, config, budget,
                                      static_cast<std::uint32_t>(r),
                                      pipeline_intact);
      }
      GenericSweepEngine engine(*shot_evaluator, cs.b_basis[r], h_r,
                                config.flat_tol);
      return minimize_fragment_impl(engine, ansatz, cs.b_basis[r], h_r,
                                    prior_b, cs.h_basis, config, budget,
                                    static_cast<std::uint32_t>(r),
                                    pipeline_intact);
    }();
    if (!outcome.converged && budget == 0) pipeline_intact = false;
    if (outcome.staging_residual > kStagingEntryTol) pipeline_intact = false;

    frag.angles = outcome.angles;
    frag.sweeps = outcome.sweeps;
    frag.converged = outcome.converged;
    frag.staging_residual = outcome.staging_residual;
    result.fragments.push_back(std::move(frag));
    result.total_sweeps += outcome.sweeps;
    result.cost_calls += outcome.cost_calls;
    result.trace.insert(result.trace.end(), outcome.trace.begin(),
                        outcome.trace.end());

    h_r = std::move(outcome.h_next);
    prior_b.push_back(cs.b_basis[r]);
  }

  result.h_final = std::move(h_r);
  result.final_residual = residual(result.h_final, result.h_basis);
  result.converged = result.final_residual <= config.target_residual &&
                     result.total_sweeps <= config.max_sweeps;
  return result;
}

SynthesisResult run_standard(const PauliSum& hamiltonian,
                             const SynthesisConfig& config) {
  if (config.backend != BackendKind::exact) {
    throw UnsupportedAnsatzError(
        "the one-shot baseline has no sampled backend: its direction element "
        "is not a single string");
  }
  if (config.ansatz != AnsatzKind::standard) {
    throw UnsupportedAnsatzError(
        "the one-shot baseline uses the plain factorized ansatz");
  }

  const Dla dla = generate_dla(hamiltonian, config.max_dla_dim);
  CartanOptions cartan_options;
  cartan_options.h_seed = config.h_seed;
  cartan_options.h_order = config.h_order;
  const CartanStructure cs =
      build_cartan_structure(dla, hamiltonian, cartan_options);

  SynthesisResult result;
  result.method = Method::standard;
  result.n_qubits = hamiltonian.n_qubits();
  result.dla_dim = dla.dim();
  result.k_dim = cs.k_basis.size();
  result.m_dim = cs.m_basis.size();
  result.h_basis = cs.h_basis;
  result.b_basis = cs.b_basis;
  result.seed = config.seed;

  // Direction element with mutually irrational weights, so its one-parameter
  // group fills the Abelian subgroup densely.
  PauliSum v(hamiltonian.n_qubits());
  double gamma = 1.0;
  for (const auto& h : cs.h_basis) {
    gamma /= kPi;
    v.add(h, gamma);
  }

  std::mt19937_64 rng(config.seed);
  std::vector<double> init(cs.k_basis.size());
  for (double& a : init) a = uniform_angle(rng);
  Ansatz ansatz(cs.k_basis, init);

  ExactSweepEngine engine(v, hamiltonian, config.flat_tol);

  FragmentResult frag;
  frag.factors = cs.k_basis;
  double prev_cost = std::numeric_limits<double>::infinity();
  bool reached_target = false;
  std::optional<PauliSum> last_transformed;
  while (result.total_sweeps < config.max_sweeps && ansatz.size() > 0) {
    SweepStep step = engine.sweep(ansatz);
    ++result.total_sweeps;
    ++frag.sweeps;

    last_transformed = std::move(step.transformed);
    const double res = residual(*last_transformed, cs.h_basis);
    result.trace.push_back({0, step.predicted_min, res});
    if (res <= config.target_residual) {
      reached_target = true;
      break;
    }
    if (prev_cost - step.predicted_min <
        config.improvement_tol * std::max(1.0, std::abs(prev_cost))) {
      break;  // deterministic fixed point
    }
    prev_cost = step.predicted_min;
  }

  frag.angles = ansatz.angles();
  frag.converged = reached_target;
  result.h_final = last_transformed.has_value()
                       ? std::move(*last_transformed)
                       : conjugate(ansatz.dagger(), hamiltonian);
  result.final_residual = residual(result.h_final, result.h_basis);
  frag.staging_residual = result.final_residual;
  result.fragments.push_back(std::move(frag));
  result.cost_calls = engine.calls();
  result.converged = result.final_residual <= config.target_residual &&
                     result.total_sweeps <= config.max_sweeps;
  return result;
}

}  // namespace redcard
