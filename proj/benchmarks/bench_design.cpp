// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "fdbf/beamforming.hpp"
#include "fdbf/channel.hpp"
#include "fdbf/rng.hpp"

using namespace fdbf;

namespace {

struct Instance {
    FrequencyChannel h_u, h_d, h_s;
};

Instance make_instance(int bs, int ue, int k, std::uint64_t seed) {
    ClusterRaySpec spec;
    ClusterRaySpec si_spec = spec;
    si_spec.n_taps = 1;
    SiGeometry geom;
    Rng rng(seed);
    const ArrayGeometry ue_g{ue, 0.5}, bs_g{bs, 0.5};
    Instance inst;
    inst.h_u = to_frequency(synth_channel(ue_g, bs_g, spec, rng), k);
    inst.h_d = to_frequency(synth_channel(bs_g, ue_g, spec, rng), k);
    inst.h_s = to_frequency(synth_si_channel(bs_g, bs_g, geom, si_spec, rng), k);
    return inst;
}

} // namespace

static void ChannelSynthesis(benchmark::State& state) {
    ClusterRaySpec spec;
    Rng rng(1);
    const ArrayGeometry tx{4, 0.5}, rx{static_cast<int>(state.range(0)), 0.5};
    for (auto _ : state) {
        const TimeDomainChannel td = synth_channel(tx, rx, spec, rng);
        benchmark::DoNotOptimize(td.taps[0](0, 0));
    }
}
BENCHMARK(ChannelSynthesis)->Arg(16)->Arg(64);

static void FullDigitalDesign(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)), 4, 16, 7);
    SolverConfig cfg;
    for (auto _ : state) {
        const FullDigitalResult r = full_digital_design(inst.h_u, inst.h_d, inst.h_s, cfg);
        benchmark::DoNotOptimize(r.residual_si[0]);
    }
}
BENCHMARK(FullDigitalDesign)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void HybridDesign(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)), 4, 16, 9);
    SolverConfig cfg;
    cfg.n_inner = 50;
    for (auto _ : state) {
        const HybridResult r = hybrid_design(inst.h_u, inst.h_d, inst.h_s, cfg);
        benchmark::DoNotOptimize(r.analog_residual);
    }
}
BENCHMARK(HybridDesign)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void AlternatingProjection(benchmark::State& state) {
    const Instance inst = make_instance(64, 4, 16, 11);
    const CMatrix a = inst.h_u.subcarriers[0] * CMatrix::Identity(4, 2);
    const CMatrix c = inst.h_s.subcarriers[0] * CMatrix::Identity(64, 2);
    for (auto _ : state) {
        const CMatrix x =
            analog_alternating_projection(a, c, 2, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(x(0, 0));
    }
}
BENCHMARK(AlternatingProjection)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
