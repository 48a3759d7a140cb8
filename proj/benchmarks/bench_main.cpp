#include <benchmark/benchmark.h>

#include "rho/rho.hpp"

using namespace rho;

namespace {

HermitianOperator random_hermitian(std::size_t dim, std::uint64_t seed) {
  rng::Stream st(seed);
  ComplexMatrix m(dim);
  for (auto& z : m.raw()) z = st.next_complex_gaussian();
  return HermitianOperator::symmetrize(std::move(m), "bench");
}

void BM_SpectralDecomposeComplex(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(h));
}
BENCHMARK(BM_SpectralDecomposeComplex)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SpectralDecomposeHardWall(benchmark::State& state) {
  const auto g = GridSystem::hard_wall(1.0, static_cast<std::size_t>(state.range(0)));
  const auto ops = grid_operators(g);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(ops.h_free));
}
BENCHMARK(BM_SpectralDecomposeHardWall)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RingOperators(benchmark::State& state) {
  const auto g = GridSystem::ring(1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_operators(g));
}
BENCHMARK(BM_RingOperators)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_OutcomeDistributionDense(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const auto rho_d = random_density(dim, dim / 2, 3).without_components();
  const auto d = spectral_decompose(random_hermitian(dim, 7));
  for (auto _ : state) benchmark::DoNotOptimize(outcome_distribution(rho_d, d));
}
BENCHMARK(BM_OutcomeDistributionDense)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_UnitaryExp(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(unitary_exp(h, 0.37));
}
BENCHMARK(BM_UnitaryExp)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_EvolveMidpointSteps(benchmark::State& state) {
  const auto h = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{0.5, 0}, {0, -0.5}}));
  const auto sched = Schedule::sampled(2, [&](double) { return h; });
  const double s = 1.0 / std::sqrt(2.0);
  const auto rho0 = projector_from_vector(cvector{s, s});
  const double steps = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_timedep(rho0, sched, 1.0, 1.0 / steps));
}
BENCHMARK(BM_EvolveMidpointSteps)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SampleMeasurements(benchmark::State& state) {
  const auto half = mixture({{{0.5, projector_from_vector(cvector{1.0, 0.0})},
                              {0.5, projector_from_vector(cvector{0.0, 1.0})}}});
  const auto spec = EnsembleSpec::homogeneous(static_cast<std::size_t>(state.range(0)), half);
  const auto sz = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, -1}}));
  for (auto _ : state) benchmark::DoNotOptimize(sample_measurements(spec, sz, 5));
}
BENCHMARK(BM_SampleMeasurements)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FftUnitary(benchmark::State& state) {
  rng::Stream st(13);
  cvector x(static_cast<std::size_t>(state.range(0)));
  for (auto& z : x) z = st.next_complex_gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(fft::unitary(x, false));
}
BENCHMARK(BM_FftUnitary)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_ChiSquarePValue(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::chi_square_pvalue(x, 7));
    x += 1e-6;
  }
}
BENCHMARK(BM_ChiSquarePValue);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
