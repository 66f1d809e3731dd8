#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redcard/models.hpp"
#include "redcard/optimize.hpp"

namespace redcard {

/// Seed workers honour the REDCARD_THREADS environment variable; 0 means
/// pick automatically.
unsigned resolve_thread_count(unsigned requested, std::size_t jobs);

struct BenchConfig {
  ModelSpec model;
  SynthesisConfig synthesis;
  std::uint32_t n_seeds = 10;
  std::uint64_t first_seed = 1;
  unsigned threads = 0;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool converged = false;
  std::uint64_t cost_calls = 0;
  std::uint64_t sweeps = 0;
  double residual = 0.0;
};

/// Statistics over the converging seeds only.
struct MethodStats {
  std::vector<SeedOutcome> runs;
  std::uint32_t n_converged = 0;
  double mean_cost_calls = 0.0;
  double std_cost_calls = 0.0;
  double mean_sweeps = 0.0;
  double std_sweeps = 0.0;
};

struct BenchReport {
  BenchConfig config;
  MethodStats redcard;
  MethodStats standard;
};

/// Runs both pipelines over n_seeds seeds (in parallel workers) and gathers
/// convergence and cost-call statistics. Convergence means reaching the
/// configured target residual within the sweep cap.
BenchReport run_bench(const BenchConfig& config);

std::string bench_report_json(const BenchReport& report);

}  // namespace redcard
