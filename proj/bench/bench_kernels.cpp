#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "logsp/convolution.hpp"
#include "logsp/functionals.hpp"
#include "logsp/kernels.hpp"

namespace {

std::vector<double> random_vector(std::size_t n) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <class Dot>
void run_dot(benchmark::State& st, Dot dot) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_vector(n * n), y = random_vector(n * n);
  for (auto _ : st) benchmark::DoNotOptimize(dot(x, y));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

void BM_DotSerial(benchmark::State& st) { run_dot(st, logsp::kernels::serial::dot); }
void BM_DotOmp(benchmark::State& st) { run_dot(st, logsp::kernels::omp::dot); }

template <class Combine>
void run_combine(benchmark::State& st, Combine combine) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto u = random_vector(n * n), lap = random_vector(n * n), w = random_vector(n * n);
  std::vector<double> out(n * n);
  for (auto _ : st) {
    combine(u, lap, w, 1.0, -1.0, 2.0, 3.0, out);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

void BM_GradientCombineSerial(benchmark::State& st) { run_combine(st, logsp::kernels::serial::gradient_combine); }
void BM_GradientCombineOmp(benchmark::State& st) { run_combine(st, logsp::kernels::omp::gradient_combine); }

template <class Direct>
void run_direct(benchmark::State& st, Direct direct) {
  const auto g = logsp::make_grid(8.0, static_cast<std::size_t>(st.range(0)));
  const logsp::Workspace ws(g);
  const auto rho = random_vector(g.size());
  std::vector<double> out(g.size());
  auto kern = [&](long di, long dj) { return ws.kernel_at(logsp::Kernel::Log, di, dj); };
  for (auto _ : st) {
    direct(g.n, g.h, rho, kern, out);
    benchmark::ClobberMemory();
  }
}

void BM_DirectConvolveSerial(benchmark::State& st) { run_direct(st, logsp::kernels::serial::direct_convolve); }
void BM_DirectConvolveOmp(benchmark::State& st) { run_direct(st, logsp::kernels::omp::direct_convolve); }

void BM_FftConvolve(benchmark::State& st) {
  const auto g = logsp::make_grid(40.0, static_cast<std::size_t>(st.range(0)));
  const logsp::Workspace ws(g);
  const auto rho = random_vector(g.size());
  for (auto _ : st) benchmark::DoNotOptimize(ws.convolve(rho, logsp::Kernel::Log));
}

void BM_EnergyState(benchmark::State& st) {
  const auto g = logsp::make_grid(40.0, static_cast<std::size_t>(st.range(0)));
  const logsp::Workspace ws(g);
  const auto u = logsp::discretize({logsp::GaussianProfile{1.0}, 1.0}, g);
  const logsp::Params prm{1.0, 1.0, 3.0, 1.0};
  for (auto _ : st) benchmark::DoNotOptimize(logsp::energy_state(u, prm, ws));
}

}  // namespace

BENCHMARK(BM_DotSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_DotOmp)->Arg(256)->Arg(1024);
BENCHMARK(BM_GradientCombineSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_GradientCombineOmp)->Arg(256)->Arg(1024);
BENCHMARK(BM_DirectConvolveSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirectConvolveOmp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FftConvolve)->Arg(32)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyState)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
