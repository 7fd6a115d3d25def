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

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace raris
{
    RotationState initial_rotation(const GeometryRealization &geom, const ScenarioConfig &cfg, Scheme scheme)
    {
        RotationState rotation(geom.bs_positions.size(), cfg.theta_max_rad());
        if (scheme != Scheme::RaIrs)
            return rotation;
        for (std::size_t m = 0; m < geom.bs_positions.size(); ++m)
        {
            const auto [theta, phi] = deflection_toward(unit_direction(geom.bs_positions[m], geom.irs_center));
            rotation.set(m, theta, phi);
        }
        return rotation;
    }

    PhaseState initial_phase(Eigen::Index n, const OptimizerConfig &cfg, std::uint64_t salt)
    {
        if (cfg.phase_init == PhaseInit::Ones && salt == 0)
            return PhaseState::ones(n);
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.phase_init_seed),
                          static_cast<std::uint32_t>(cfg.phase_init_seed >> 32), static_cast<std::uint32_t>(salt),
                          static_cast<std::uint32_t>(salt >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        std::vector<double> phases(static_cast<std::size_t>(n));
        for (auto &p : phases)
            p = angle(rng);
        return PhaseState::from_phases(phases);
    }

    namespace
    {
        SolveResult single_pass(const Problem &problem, const RotationState &init_rotation,
                                const PhaseState &init_phase, const OptimizerConfig &cfg, Scheme scheme,
                                const SolveObserver *observer)
        {
            const bool rotate = scheme != Scheme::FixedIrs;
            const bool reflect = scheme != Scheme::RaOnly && problem.model.num_elements() > 0;

            SolveResult result;
            result.report.scheme = scheme;
            result.rotation = init_rotation;
            result.phase = reflect ? init_phase : PhaseState::ones(problem.model.num_elements());
            result.beamformer = mmse_beamformer(result.rotation, result.phase, problem);
            result.report.initial_sum_rate = sum_rate(result.beamformer, result.rotation, result.phase, problem);

            const std::function<void(const RotationState &)> no_rotation_observer;
            PhaseObserver phase_observer;
            if (observer)
            {
                phase_observer.on_iterate = observer->on_phase;
                phase_observer.on_beta_update = observer->on_beta_update;
            }

            PgaStats pga;
            FpStats fp;
            double previous = -std::numeric_limits<double>::infinity();
            for (int t = 1; t <= cfg.outer_max; ++t)
            {
                if (rotate)
                    result.rotation = optimize_rotations(result.beamformer, result.rotation, result.phase, problem,
                                                         cfg.pga, &pga,
                                                         observer ? observer->on_rotation : no_rotation_observer);
                result.beamformer = mmse_beamformer(result.rotation, result.phase, problem);
                if (reflect)
                    result.phase = optimize_phases(result.beamformer, result.rotation, result.phase, problem, cfg,
                                                   &fp, &phase_observer);

                const double rate = sum_rate(result.beamformer, result.rotation, result.phase, problem);
                result.report.sum_rate_trajectory.push_back(rate);
                result.report.iterations_used = t;
                if (std::abs(rate - previous) < cfg.outer_tol)
                {
                    result.report.converged = true;
                    break;
                }
                previous = rate;
            }

            result.report.per_user_sinr = sinrs(result.beamformer,
                                                problem.model.effective_channels(result.rotation, result.phase),
                                                problem.powers, problem.noise);
            result.report.diagnostics = {pga.iterations, pga.accepted_steps, fp.rcg_iterations, fp.rounds};
            return result;
        }
    }

    SolveResult ao_solve(const Problem &problem, const RotationState &init_rotation, const PhaseState &init_phase,
                         const OptimizerConfig &cfg, Scheme scheme, const SolveObserver *observer)
    {
        validate(cfg);
        const auto start = std::chrono::steady_clock::now();

        SolveResult best = single_pass(problem, init_rotation, init_phase, cfg, scheme, observer);
        if (scheme != Scheme::RaOnly)
        {
            for (int r = 1; r <= cfg.restarts; ++r)
            {
                const PhaseState phase = initial_phase(problem.model.num_elements(), cfg, static_cast<std::uint64_t>(r));
                SolveResult candidate = single_pass(problem, init_rotation, phase, cfg, scheme, observer);
                if (candidate.report.final_sum_rate() > best.report.final_sum_rate())
                    best = std::move(candidate);
            }
        }

        best.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return best;
    }

    SolveResult ao_solve(const ScenarioConfig &scenario, const OptimizerConfig &cfg, Scheme scheme,
                         const SolveObserver *observer)
    {
        const GeometryRealization geom = generate_realization(scenario);
        const Problem problem = Problem::from_scenario(scenario, geom, scheme != Scheme::RaOnly);
        return ao_solve(problem, initial_rotation(geom, scenario, scheme),
                        initial_phase(problem.model.num_elements(), cfg), cfg, scheme, observer);
    }
}
