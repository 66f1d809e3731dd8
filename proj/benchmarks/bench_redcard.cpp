#include <benchmark/benchmark.h>

#include <random>

#include "redcard/adjoint.hpp"
#include "redcard/algebra.hpp"
#include "redcard/cartan.hpp"
#include "redcard/models.hpp"
#include "redcard/optimize.hpp"
#include "redcard/qsim.hpp"

using namespace redcard;

namespace {

PauliSum tfim(std::uint32_t sites) {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = sites;
  spec.coupling_x = 1.0;
  spec.field = 0.5;
  return build_model(spec);
}

Ansatz full_k_ansatz(const PauliSum& h, std::uint64_t seed) {
  const Dla dla = generate_dla(h);
  const auto [k, m] = split_km(dla, h);
  std::mt19937_64 rng(seed);
  std::vector<double> angles(k.size());
  for (double& a : angles) {
    a = 3.14159 * static_cast<double>(rng() >> 11) * 0x1p-53;
  }
  return Ansatz(k, angles);
}

void BM_string_product(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const PauliString a(16, rng() & 0xffff, rng() & 0xffff);
  const PauliString b(16, rng() & 0xffff, rng() & 0xffff);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(a, b));
  }
}
BENCHMARK(BM_string_product);

void BM_closure(benchmark::State& state) {
  const PauliSum h = tfim(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_dla(h));
  }
}
BENCHMARK(BM_closure)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

void BM_conjugate_full(benchmark::State& state) {
  const PauliSum h = tfim(static_cast<std::uint32_t>(state.range(0)));
  const Ansatz ansatz = full_k_ansatz(h, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugate(ansatz, h));
  }
}
BENCHMARK(BM_conjugate_full)->Arg(4)->Arg(6)->Arg(8);

void BM_subproblem_cost(benchmark::State& state) {
  const PauliSum h = tfim(4);
  const Dla dla = generate_dla(h);
  const CartanStructure cs = build_cartan_structure(dla, h);
  std::vector<double> angles(cs.fragments[0].size(), 0.7);
  const Ansatz ansatz(cs.fragments[0], angles);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_fr(ansatz, cs.b_basis[0], h));
  }
}
BENCHMARK(BM_subproblem_cost);

void BM_sampled_cost(benchmark::State& state) {
  const PauliSum h = tfim(4);
  const Dla dla = generate_dla(h);
  const CartanStructure cs = build_cartan_structure(dla, h);
  std::vector<double> angles(cs.fragments[0].size(), 0.7);
  const Ansatz ansatz(cs.fragments[0], angles);
  ShotCostEvaluator evaluator({800, 1, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluator.evaluate(ansatz, cs.b_basis[0], h));
  }
}
BENCHMARK(BM_sampled_cost);

void BM_synthesize(benchmark::State& state) {
  const PauliSum h = tfim(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    SynthesisConfig config;
    config.seed = 1;
    benchmark::DoNotOptimize(run_redcard(h, config));
  }
}
BENCHMARK(BM_synthesize)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
