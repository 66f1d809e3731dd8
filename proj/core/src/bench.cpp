#include "redcard/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

namespace redcard {

unsigned resolve_thread_count(unsigned requested, std::size_t jobs) {
  unsigned limit = requested;
  if (const char* env = std::getenv("REDCARD_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) limit = static_cast<unsigned>(parsed);
  }
  if (limit == 0) limit = std::thread::hardware_concurrency();
  if (limit == 0) limit = 1;
  return static_cast<unsigned>(std::min<std::size_t>(limit, jobs));
}

namespace {

MethodStats summarize(std::vector<SeedOutcome> runs) {
  MethodStats stats;
  stats.runs = std::move(runs);
  double sum_calls = 0, sum_sweeps = 0;
  for (const auto& run : stats.runs) {
    if (!run.converged) continue;
    ++stats.n_converged;
    sum_calls += static_cast<double>(run.cost_calls);
    sum_sweeps += static_cast<double>(run.sweeps);
  }
  if (stats.n_converged == 0) return stats;
  stats.mean_cost_calls = sum_calls / stats.n_converged;
  stats.mean_sweeps = sum_sweeps / stats.n_converged;
  double var_calls = 0, var_sweeps = 0;
  for (const auto& run : stats.runs) {
    if (!run.converged) continue;
    var_calls += std::pow(run.cost_calls - stats.mean_cost_calls, 2);
    var_sweeps += std::pow(run.sweeps - stats.mean_sweeps, 2);
  }
  stats.std_cost_calls = std::sqrt(var_calls / stats.n_converged);
  stats.std_sweeps = std::sqrt(var_sweeps / stats.n_converged);
  return stats;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  const PauliSum hamiltonian = build_model(config.model);
  const std::size_t jobs = config.n_seeds;

  std::vector<SeedOutcome> redcard_runs(jobs);
  std::vector<SeedOutcome> standard_runs(jobs);

  auto run_seed = [&](std::size_t i) {
    SynthesisConfig synth = config.synthesis;
    synth.seed = config.first_seed + i;
    const SynthesisResult fragmented = run_redcard(hamiltonian, synth);
    redcard_runs[i] = {synth.seed, fragmented.converged, fragmented.cost_calls,
                       fragmented.total_sweeps, fragmented.final_residual};
    SynthesisConfig baseline = synth;
    baseline.backend = BackendKind::exact;
    baseline.ansatz = AnsatzKind::standard;
    const SynthesisResult oneshot = run_standard(hamiltonian, baseline);
    standard_runs[i] = {synth.seed, oneshot.converged, oneshot.cost_calls,
                        oneshot.total_sweeps, oneshot.final_residual};
  };

  const unsigned workers = resolve_thread_count(config.threads, jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) run_seed(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs;
             i = next.fetch_add(1)) {
          run_seed(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  BenchReport report;
  report.config = config;
  report.redcard = summarize(std::move(redcard_runs));
  report.standard = summarize(std::move(standard_runs));
  return report;
}

std::string bench_report_json(const BenchReport& report) {
  using json = nlohmann::ordered_json;
  auto stats_json = [](const MethodStats& stats) {
    json runs = json::array();
    for (const auto& run : stats.runs) {
      runs.push_back({{"seed", run.seed},
                      {"converged", run.converged},
                      {"cost_calls", run.cost_calls},
                      {"sweeps", run.sweeps},
                      {"residual", run.residual}});
    }
    return json{{"n_converged", stats.n_converged},
                {"mean_cost_calls", stats.mean_cost_calls},
                {"std_cost_calls", stats.std_cost_calls},
                {"mean_sweeps", stats.mean_sweeps},
                {"std_sweeps", stats.std_sweeps},
                {"runs", std::move(runs)}};
  };

  json out;
  out["model"] = {{"family", to_string(report.config.model.family)},
                  {"sites", report.config.model.sites}};
  out["n_seeds"] = report.config.n_seeds;
  out["first_seed"] = report.config.first_seed;
  out["target_residual"] = report.config.synthesis.target_residual;
  out["max_sweeps"] = report.config.synthesis.max_sweeps;
  out["redcard"] = stats_json(report.redcard);
  out["standard"] = stats_json(report.standard);
  return out.dump(2) + "\n";
}

}  // namespace redcard
