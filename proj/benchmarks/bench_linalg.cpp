// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "fdbf/linalg.hpp"
#include "fdbf/rng.hpp"

using namespace fdbf;

namespace {

CMatrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = rng.cgaussian();
    return m;
}

} // namespace

static void SvdTall(benchmark::State& state) {
    const CMatrix a = random_matrix(state.range(0), 2, 1);
    for (auto _ : state) {
        const SvdResult dec = svd(a);
        benchmark::DoNotOptimize(dec.s(0));
    }
}
BENCHMARK(SvdTall)->Arg(16)->Arg(64)->Arg(128);

static void PseudoInverse(benchmark::State& state) {
    const CMatrix c = random_matrix(state.range(0), 2, 2);
    for (auto _ : state) {
        const CMatrix p = pseudo_inverse(c);
        benchmark::DoNotOptimize(p(0, 0));
    }
}
BENCHMARK(PseudoInverse)->Arg(16)->Arg(64);

static void LogdetCapacity(benchmark::State& state) {
    const CMatrix e = random_matrix(4, 4, 3);
    CMatrix q = random_matrix(4, 4, 4);
    q = (q * q.adjoint() + CMatrix::Identity(4, 4)).eval();
    for (auto _ : state) {
        benchmark::DoNotOptimize(logdet_capacity(e, q, 0.5));
    }
}
BENCHMARK(LogdetCapacity);

static void DftTaps(benchmark::State& state) {
    std::vector<CMatrix> taps;
    for (int l = 0; l < 4; ++l)
        taps.push_back(random_matrix(16, 4, 10 + l));
    for (auto _ : state) {
        for (int k = 0; k < 16; ++k)
            benchmark::DoNotOptimize(dft_taps(taps, k, 16)(0, 0));
    }
}
BENCHMARK(DftTaps);
