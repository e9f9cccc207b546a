#include <benchmark/benchmark.h>

#include <numbers>

#include "mzchain/circuit.hpp"
#include "mzchain/closed_form.hpp"
#include "mzchain/elements.hpp"
#include "mzchain/field_algebra.hpp"
#include "mzchain/sweep.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_Compose(benchmark::State& state) {
  const mzchain::TransferMatrix2 a = mzchain::mzi(0.7);
  const mzchain::TransferMatrix2 b =
      mzchain::phase_shifter(mzchain::Arm::upper, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzchain::compose(a, b));
  }
}
BENCHMARK(BM_Compose);

void BM_CoupledChain(benchmark::State& state) {
  mzchain::ChainSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.phi = 0.7;
  spec.psi = kPi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzchain::coupled_chain(spec));
  }
}
BENCHMARK(BM_CoupledChain)->Arg(2)->Arg(8);

void BM_ClosedFormPoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mzchain::chain_intensities_closed_form(8, 0.7, kPi));
  }
}
BENCHMARK(BM_ClosedFormPoint);

void BM_Sweep721(benchmark::State& state) {
  mzchain::SweepConfig config;
  config.n = 4;
  config.psi_values = {kPi};
  config.engine = mzchain::Engine::matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzchain::sweep(config));
  }
}
BENCHMARK(BM_Sweep721);

void BM_ParseCompile(benchmark::State& state) {
  const char* source =
      "mzi(phi); phase(upper, psi); mzi(phi); phase(lower, psi);";
  const mzchain::Bindings bindings{{"phi", 0.7}, {"psi", kPi}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzchain::compile(mzchain::parse(source), bindings));
  }
}
BENCHMARK(BM_ParseCompile);

}  // namespace

BENCHMARK_MAIN();
