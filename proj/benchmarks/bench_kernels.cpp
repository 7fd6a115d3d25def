// SPDX-License-Identifier: Apache-2.0
//
// raris - rotatable-antenna arrays with IRS assistance, uplink simulation
// Copyright (C) 2026 The raris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "raris/optimizer.hpp"
#include "raris/realization.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace raris;

namespace
{
    ScenarioConfig sized(int bs_side, int irs_side)
    {
        ScenarioConfig sc;
        sc.bs_count_x = sc.bs_count_z = bs_side;
        sc.irs_count_y = sc.irs_count_z = irs_side;
        return sc;
    }

    RotationState random_rotation(std::mt19937_64 &rng, std::size_t M, double theta_max)
    {
        std::uniform_real_distribution<double> th(0.0, theta_max), ph(0.0, 6.283185307179586);
        RotationState r(M, theta_max);
        for (std::size_t m = 0; m < M; ++m)
        {
            const double t = th(rng);
            r.set(m, t, ph(rng));
        }
        return r;
    }

    PhaseState random_phase(std::mt19937_64 &rng, Eigen::Index n)
    {
        std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
        std::vector<double> p(static_cast<std::size_t>(n));
        for (auto &x : p)
            x = ph(rng);
        return PhaseState::from_phases(p);
    }
}

// Channel evaluation, MMSE and the rotation gradient versus the BS array side.
static void BM_RotationGradient(benchmark::State &state)
{
    const ScenarioConfig sc = sized(static_cast<int>(state.range(0)), 8);
    const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
    std::mt19937_64 rng(1);
    const RotationState rot = random_rotation(rng, static_cast<std::size_t>(sc.num_bs_antennas()), sc.theta_max_rad());
    const PhaseState v = random_phase(rng, pb.model.num_elements());
    for (auto _ : state)
    {
        const Beamformer bf = mmse_beamformer(rot, v, pb);
        benchmark::DoNotOptimize(rate_rotation_gradient(bf, rot, v, pb));
    }
    state.counters["M"] = sc.num_bs_antennas();
}
BENCHMARK(BM_RotationGradient)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

// One PGA block (up to the configured inner iterations).
static void BM_RotationBlock(benchmark::State &state)
{
    const ScenarioConfig sc = sized(static_cast<int>(state.range(0)), 8);
    const GeometryRealization geom = generate_realization(sc);
    const Problem pb = Problem::from_scenario(sc, geom);
    const RotationState init = initial_rotation(geom, sc, Scheme::RaIrs);
    const PhaseState v = PhaseState::ones(pb.model.num_elements());
    const Beamformer bf = mmse_beamformer(init, v, pb);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_rotations(bf, init, v, pb, PgaConfig{}));
    state.counters["M"] = sc.num_bs_antennas();
}
BENCHMARK(BM_RotationBlock)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

// Surrogate value plus Riemannian gradient versus the IRS side.
static void BM_PhaseGradient(benchmark::State &state)
{
    const ScenarioConfig sc = sized(4, static_cast<int>(state.range(0)));
    const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
    std::mt19937_64 rng(2);
    const RotationState rot = random_rotation(rng, 16, sc.theta_max_rad());
    const PhaseState v = random_phase(rng, pb.model.num_elements());
    const PhaseSubproblem sub(mmse_beamformer(rot, v, pb), pb.model.evaluate(rot), pb.powers, pb.noise);
    const FPAuxiliaries aux = sub.optimal_auxiliaries(v.values());
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(sub.surrogate(v.values(), aux));
        benchmark::DoNotOptimize(riemannian_gradient(sub.surrogate_gradient(v.values(), aux), v.values()));
    }
    state.counters["N"] = static_cast<double>(pb.model.num_elements());
}
BENCHMARK(BM_PhaseGradient)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

// Full phase block (FP rounds with RCG inner solves).
static void BM_PhaseBlock(benchmark::State &state)
{
    const ScenarioConfig sc = sized(4, static_cast<int>(state.range(0)));
    const GeometryRealization geom = generate_realization(sc);
    const Problem pb = Problem::from_scenario(sc, geom);
    const RotationState rot = initial_rotation(geom, sc, Scheme::RaIrs);
    const PhaseState v = PhaseState::ones(pb.model.num_elements());
    const Beamformer bf = mmse_beamformer(rot, v, pb);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_phases(bf, rot, v, pb, OptimizerConfig{}));
    state.counters["N"] = static_cast<double>(pb.model.num_elements());
}
BENCHMARK(BM_PhaseBlock)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

// Complete alternating-optimization solve on the reference deployment.
static void BM_AoSolve(benchmark::State &state)
{
    ScenarioConfig sc;
    const auto scheme = static_cast<Scheme>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ao_solve(sc, OptimizerConfig{}, scheme).report.final_sum_rate());
    state.SetLabel(std::string(to_string(scheme)));
}
BENCHMARK(BM_AoSolve)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
