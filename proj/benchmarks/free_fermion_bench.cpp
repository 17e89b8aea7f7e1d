// Copyright 2026 The xxquench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xxq/chain_model.hpp"
#include "xxq/free_fermion.hpp"

#include <benchmark/benchmark.h>

namespace {

xxq::HoppingMatrix pst_hopping(int sites) {
  return xxq::hopping_matrix(xxq::build_profile(xxq::ProfileKind::FullyEngineered, sites));
}

void BM_Diagonalize(benchmark::State& state) {
  const auto hopping = pst_hopping(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxq::diagonalize(hopping));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diagonalize)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

void BM_Propagator(benchmark::State& state) {
  const auto spectrum = xxq::diagonalize(pst_hopping(static_cast<int>(state.range(0))));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxq::propagator(spectrum, t));
    t += 0.1;
  }
}
BENCHMARK(BM_Propagator)->RangeMultiplier(4)->Range(16, 1024);

// Tridiagonal path used by the boundary optimizer.
void BM_EndpointSpectrum(benchmark::State& state) {
  const auto profile =
      xxq::build_profile(xxq::ProfileKind::MinimallyEngineered, static_cast<int>(state.range(0)), 0.5);
  const auto hopping = xxq::hopping_matrix(profile);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxq::endpoint_spectrum(hopping));
  }
}
BENCHMARK(BM_EndpointSpectrum)->RangeMultiplier(4)->Range(16, 4096);

void BM_EndpointAmplitudes(benchmark::State& state) {
  const auto profile =
      xxq::build_profile(xxq::ProfileKind::MinimallyEngineered, static_cast<int>(state.range(0)), 0.5);
  const auto spectrum = xxq::endpoint_spectrum(xxq::hopping_matrix(profile));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxq::endpoint_amplitudes(spectrum, t));
    t += 0.05;
  }
}
BENCHMARK(BM_EndpointAmplitudes)->RangeMultiplier(4)->Range(16, 4096);

void BM_QuenchEntropy(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto spectrum = xxq::diagonalize(pst_hopping(sites));
  const auto init = xxq::initial_state_spec(xxq::InitialState::Neel, sites);
  double t = 0.0;
  for (auto _ : state) {
    const auto c = xxq::quench_correlations(spectrum, init, t);
    benchmark::DoNotOptimize(xxq::block_entropy(c, xxq::half_chain(sites)));
    t += 0.1;
  }
}
BENCHMARK(BM_QuenchEntropy)->RangeMultiplier(4)->Range(16, 256);

}  // namespace
