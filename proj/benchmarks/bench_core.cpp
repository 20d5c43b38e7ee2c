// Copyright 2026 The arrowtime Authors
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

#include <Eigen/QR>
#include <cstdlib>

#include "arrowtime/extraction.hpp"
#include "arrowtime/inference.hpp"
#include "arrowtime/pdm.hpp"

using namespace arrowtime;

namespace {

DensityMatrix random_state(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  const Matrix g = Matrix::Random(n, n);
  const Matrix rho = g * g.adjoint();
  return DensityMatrix(rho / rho.trace());
}

// Kraus operators sliced out of a random isometry C^d → C^{d·k}.
KrausChannel random_channel(std::size_t d, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(d);
  const auto rows = n * static_cast<Eigen::Index>(k);
  const Eigen::HouseholderQR<Matrix> qr(Matrix::Random(rows, n));
  const Matrix iso =
      Matrix(qr.householderQ()) * Matrix::Identity(rows, n);
  std::vector<Matrix> ops;
  for (std::size_t j = 0; j < k; ++j) {
    ops.emplace_back(iso.middleRows(static_cast<Eigen::Index>(j) * n, n));
  }
  return KrausChannel(std::move(ops));
}

struct Instance {
  DensityMatrix rho;
  ChoiMatrix m;
  Pdm r;
};

Instance make_instance(unsigned n) {
  std::srand(1234 + n);
  const std::size_t d = std::size_t{1} << n;
  DensityMatrix rho = random_state(d);
  ChoiMatrix m = cj_from_kraus(random_channel(d, 2));
  Pdm r = pdm_closed_form(rho, m);
  return {std::move(rho), std::move(m), std::move(r)};
}

void BM_HermitianEig(benchmark::State& state) {
  std::srand(7);
  const auto d = state.range(0);
  const Matrix g = Matrix::Random(d, d);
  const Matrix h = g + g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(2, 64);

void BM_CorrelatorsFromProcess(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::srand(11);
  const std::size_t d = std::size_t{1} << n;
  const DensityMatrix rho = random_state(d);
  const KrausChannel ch = random_channel(d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlators_from_process(rho, ch));
  }
}
BENCHMARK(BM_CorrelatorsFromProcess)->DenseRange(1, 3);

void BM_PdmClosedForm(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdm_closed_form(inst.rho, inst.m));
  }
}
BENCHMARK(BM_PdmClosedForm)->DenseRange(1, 3);

void BM_ExtractSylvester(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_choi_sylvester(inst.r, inst.rho));
  }
}
BENCHMARK(BM_ExtractSylvester)->DenseRange(1, 3);

void BM_ExtractInverse(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_choi_inverse(inst.r, inst.rho));
  }
}
BENCHMARK(BM_ExtractInverse)->DenseRange(1, 2);

void BM_ExtractPseudoinverse(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_choi_pseudoinverse(inst.r, inst.rho));
  }
}
BENCHMARK(BM_ExtractPseudoinverse)->DenseRange(1, 2);

void BM_InferArrow(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::srand(19);
  const std::size_t d = std::size_t{1} << n;
  const CorrelatorTable table =
      correlators_from_process(random_state(d), random_channel(d, 2));
  for (auto _ : state) benchmark::DoNotOptimize(infer_arrow(table));
}
BENCHMARK(BM_InferArrow)->DenseRange(1, 2);

}  // namespace

BENCHMARK_MAIN();
