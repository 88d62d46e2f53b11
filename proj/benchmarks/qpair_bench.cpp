// Copyright 2026 The qpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qpair/dfs.hpp"
#include "qpair/evolve.hpp"
#include "qpair/gates.hpp"
#include "qpair/model.hpp"

namespace {

using namespace qpair;

const NoiseModel kNoise{{0.6, 0.3, 0.8}, 1.2};

BathSpec shared_bath(int pairs, int cutoff) {
  BathSpec bath;
  const int mode = bath.add_mode(1.0, cutoff);
  for (int l = 0; l < pairs; ++l) bath.couple(l, mode, 0.2);
  return bath;
}

void BM_AssembleTotal(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  const BathSpec bath = shared_bath(pairs, 4);
  const HilbertLayout layout = pair_layout(pairs, bath);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_h_total(pairs, kNoise, bath, {}, layout));
  }
  state.counters["dim"] = static_cast<double>(layout.dim());
}
BENCHMARK(BM_AssembleTotal)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_Propagator(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  const BathSpec bath = shared_bath(pairs, 6);
  const HilbertLayout layout = pair_layout(pairs, bath);
  const Matrix h = assemble_h_total(pairs, kNoise, bath, {}, layout);
  for (auto _ : state) {
    SpectralPropagator prop(h);
    benchmark::DoNotOptimize(prop.energies().data());
  }
  state.counters["dim"] = static_cast<double>(layout.dim());
}
BENCHMARK(BM_Propagator)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const BathSpec bath = shared_bath(2, 6);
  const HilbertLayout layout = pair_layout(2, bath);
  const Matrix h = assemble_h_total(2, kNoise, bath, {}, layout);
  const SpectralPropagator prop(h);
  Vector psi = Vector::Zero(layout.dim());
  psi(0) = 1.0;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prop.evolve(psi, t += 0.1));
  }
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMicrosecond);

void BM_Subspace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coherence_preserving_subspace(kNoise.noise, m));
  }
}
BENCHMARK(BM_Subspace)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_GateHamiltonian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> a(0.0, 6.283185307179586);
  const Matrix u = u_pair_gate({a(rng), a(rng), a(rng)}, kNoise.noise);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gate_hamiltonian(u));
  }
}
BENCHMARK(BM_GateHamiltonian)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
