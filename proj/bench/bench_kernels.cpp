// Serial reference kernels against their OpenMP counterparts.
// Arguments: {matrix size, number of nodes}.

#include <benchmark/benchmark.h>

#include "rankone/generators.hpp"
#include "rankone/kernels.hpp"
#include "rankone/poly.hpp"

using namespace rankone;

namespace {

struct Instance {
  Matrix E, A;
  Vector u, v;
  std::vector<cdouble> nodes;
};

Instance make(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(static_cast<std::uint64_t>(n));
  Instance in;
  in.E = gen::integer_matrix(rng, n, n, -3, 3);
  in.A = gen::integer_matrix(rng, n, n, -3, 3);
  in.u = gen::integer_vector(rng, n, -3, 3);
  in.v = gen::integer_vector(rng, n, -3, 3);
  in.nodes = circle_nodes(static_cast<int>(state.range(1)), 7.0, 0.1);
  return in;
}

template <auto Fn>
void det_bench(benchmark::State& state) {
  const Instance in = make(state);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in.E, in.A, in.nodes));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <auto Fn>
void solve_bench(benchmark::State& state) {
  const Instance in = make(state);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in.E, in.A, in.nodes, in.u, in.v));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <auto Fn>
void adjoint_bench(benchmark::State& state) {
  const Instance in = make(state);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in.E, in.A, in.nodes, in.v));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {4, 16, 64})
    for (int nodes : {16, 128}) b->Args({n, nodes});
  b->UseRealTime();
}

}  // namespace

BENCHMARK(det_bench<kernels::serial::det_at_nodes>)->Name("det/serial")->Apply(sizes);
BENCHMARK(det_bench<kernels::det_at_nodes>)->Name("det/omp")->Apply(sizes);
BENCHMARK(solve_bench<kernels::serial::solve_at_nodes>)->Name("solve/serial")->Apply(sizes);
BENCHMARK(solve_bench<kernels::solve_at_nodes>)->Name("solve/omp")->Apply(sizes);
BENCHMARK(adjoint_bench<kernels::serial::adjoint_solve_at_nodes>)
    ->Name("adjoint/serial")
    ->Apply(sizes);
BENCHMARK(adjoint_bench<kernels::adjoint_solve_at_nodes>)->Name("adjoint/omp")->Apply(sizes);
BENCHMARK(det_bench<kernels::serial::log_det_derivative_at_nodes>)
    ->Name("logdet/serial")
    ->Apply(sizes);
BENCHMARK(det_bench<kernels::log_det_derivative_at_nodes>)->Name("logdet/omp")->Apply(sizes);

BENCHMARK_MAIN();
