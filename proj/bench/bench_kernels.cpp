// Serial reference vs OpenMP for the enumeration kernels.
#include "locdens/kernels.hpp"
#include "locdens/lattice.hpp"

#include <benchmark/benchmark.h>

using namespace locdens;

namespace {

void histogram(benchmark::State& state, Execution exec) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  const LatticeSpec l = parse_lattice("L3", 2);
  const BlockForm form(l.blocks().front(), 2, m);
  const std::uint64_t mod = std::uint64_t{1} << m;
  for (auto _ : state) {
    auto h = exec == Execution::serial ? kernels::block_histogram_serial(form, mod)
                                       : kernels::block_histogram_parallel(form, mod);
    benchmark::DoNotOptimize(h);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mod * mod * mod));
}

void sum_squares(benchmark::State& state, Execution exec) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto h = exec == Execution::serial ? kernels::sum_squares_histogram_serial(4, n)
                                       : kernels::sum_squares_histogram_parallel(4, n);
    benchmark::DoNotOptimize(h);
  }
}

void convolve(benchmark::State& state, Execution exec) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  std::vector<BigCount> a(len), b(len);
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = static_cast<unsigned long>(i * 7 + 1);
    b[i] = static_cast<unsigned long>(i * i % 97);
  }
  for (auto _ : state) {
    auto c = exec == Execution::serial ? kernels::cyclic_convolve_serial(a, b)
                                       : kernels::cyclic_convolve_parallel(a, b);
    benchmark::DoNotOptimize(c);
  }
}

void census(benchmark::State& state, Execution exec) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto c = exec == Execution::serial ? kernels::half_lift_census_serial(3, n, 3)
                                       : kernels::half_lift_census_parallel(3, n, 3);
    benchmark::DoNotOptimize(c);
  }
}

}  // namespace

BENCHMARK_CAPTURE(histogram, serial, Execution::serial)->Arg(5)->Arg(7);
BENCHMARK_CAPTURE(histogram, parallel, Execution::parallel)->Arg(5)->Arg(7);
BENCHMARK_CAPTURE(sum_squares, serial, Execution::serial)->Arg(4)->Arg(5);
BENCHMARK_CAPTURE(sum_squares, parallel, Execution::parallel)->Arg(4)->Arg(5);
BENCHMARK_CAPTURE(convolve, serial, Execution::serial)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(convolve, parallel, Execution::parallel)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(census, serial, Execution::serial)->Arg(5)->Arg(6);
BENCHMARK_CAPTURE(census, parallel, Execution::parallel)->Arg(5)->Arg(6);

BENCHMARK_MAIN();
