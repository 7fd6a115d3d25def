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

#include "support.hpp"

#include "raris/optimizer.hpp"

#include <doctest.h>

#include <chrono>
#include <cstdio>

using namespace raris;

namespace
{
    template <typename F>
    double min_seconds(F &&f, int inner, int repeats = 7)
    {
        double best = 1e300;
        for (int r = 0; r < repeats; ++r)
        {
            const auto t0 = std::chrono::steady_clock::now();
            for (int i = 0; i < inner; ++i)
                f();
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count() / inner);
        }
        return best;
    }

    double slope(const std::vector<double> &x, const std::vector<double> &t)
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double lx = std::log(x[i]), ly = std::log(t[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    volatile double sink = 0.0;
}

TEST_CASE("rotation block cost grows at most cubically in the antenna count")
{
    std::vector<double> xs, ts;
    for (int side : {2, 4, 8})
    {
        ScenarioConfig sc;
        sc.bs_count_x = sc.bs_count_z = side;
        const int M = side * side;
        const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
        std::mt19937_64 rng(1);
        const RotationState rot = test::random_interior_rotation(rng, static_cast<std::size_t>(M), sc.theta_max_rad());
        const PhaseState v = test::random_phase(rng, pb.model.num_elements());
        const double t = min_seconds(
            [&] {
                const Beamformer bf = mmse_beamformer(rot, v, pb);
                sink = sink + rate_rotation_gradient(bf, rot, v, pb)(0, 0);
            },
            M <= 16 ? 20 : 5);
        xs.push_back(M);
        ts.push_back(t);
        std::printf("M=%d  %.3e s per beamformer + gradient\n", M, t);
    }
    const double s = slope(xs, ts);
    std::printf("log-log slope in M: %.3f\n", s);
    CHECK(s <= 3.0 * 1.3);
}

TEST_CASE("phase block cost grows at most linearly in the element count")
{
    std::vector<double> xs, ts;
    for (int side : {4, 8, 16})
    {
        ScenarioConfig sc;
        sc.irs_count_y = sc.irs_count_z = side;
        const int N = side * side;
        const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
        std::mt19937_64 rng(2);
        const RotationState rot = test::random_interior_rotation(rng, 16, sc.theta_max_rad());
        const PhaseState v = test::random_phase(rng, N);
        const Beamformer bf = mmse_beamformer(rot, v, pb);
        const PhaseSubproblem sub(bf, pb.model.evaluate(rot), pb.powers, pb.noise);
        const FPAuxiliaries aux = sub.optimal_auxiliaries(v.values());
        const double t = min_seconds(
            [&] {
                const Eigen::VectorXcd g = riemannian_gradient(sub.surrogate_gradient(v.values(), aux), v.values());
                sink = sink + g[0].real() + sub.surrogate(v.values(), aux);
            },
            2000);
        xs.push_back(N);
        ts.push_back(t);
        std::printf("N=%d  %.3e s per surrogate + Riemannian gradient\n", N, t);
    }
    const double s = slope(xs, ts);
    std::printf("log-log slope in N: %.3f\n", s);
    CHECK(s <= 1.0 * 1.3);
}
