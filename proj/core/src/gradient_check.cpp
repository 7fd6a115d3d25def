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

#include "raris/gradient_check.hpp"

#include "raris/optimizer.hpp"
#include "raris/realization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace raris
{
    std::uint64_t gradient_state_seed(std::uint64_t base_seed, int index)
    {
        return base_seed * 1000003ULL + static_cast<std::uint64_t>(index);
    }

    namespace
    {
        double relative_error(const Eigen::VectorXd &analytic, const Eigen::VectorXd &reference)
        {
            const double scale = std::max(reference.norm(), 1e-300);
            return (analytic - reference).norm() / scale;
        }

        Eigen::VectorXd fd_rotation_gradient(const Beamformer &bf, const RotationState &rotation,
                                             const PhaseState &phase, const Problem &problem, double h)
        {
            const std::size_t M = rotation.size();
            Eigen::VectorXd g(2 * M);
            for (std::size_t m = 0; m < M; ++m)
            {
                for (int axis = 0; axis < 2; ++axis)
                {
                    RotationState plus = rotation, minus = rotation;
                    if (axis == 0)
                    {
                        plus.set(m, rotation.theta(m) + h, rotation.phi(m));
                        minus.set(m, rotation.theta(m) - h, rotation.phi(m));
                    }
                    else
                    {
                        plus.set(m, rotation.theta(m), rotation.phi(m) + h);
                        minus.set(m, rotation.theta(m), rotation.phi(m) - h);
                    }
                    g[static_cast<Eigen::Index>(2 * m + axis)] =
                        (sum_rate(bf, plus, phase, problem) - sum_rate(bf, minus, phase, problem)) / (2.0 * h);
                }
            }
            return g;
        }

        Eigen::VectorXd fd_surrogate_gradient(const PhaseSubproblem &sub, const Eigen::VectorXcd &v,
                                              const FPAuxiliaries &aux, double h)
        {
            Eigen::VectorXd g(2 * v.size());
            for (Eigen::Index n = 0; n < v.size(); ++n)
            {
                for (int part = 0; part < 2; ++part)
                {
                    const cdouble delta = part == 0 ? cdouble(h, 0.0) : cdouble(0.0, h);
                    Eigen::VectorXcd plus = v, minus = v;
                    plus[n] += delta;
                    minus[n] -= delta;
                    g[2 * n + part] = (sub.surrogate(plus, aux) - sub.surrogate(minus, aux)) / (2.0 * h);
                }
            }
            return g;
        }
    }

    GradientCheckResult check_gradients(const ScenarioConfig &scenario, const GradientCheckConfig &cfg)
    {
        GradientCheckResult result;
        result.rotation_tol = cfg.rotation_tol;
        result.phase_tol = cfg.phase_tol;

        for (int i = 0; i < cfg.num_states; ++i)
        {
            const std::uint64_t state_seed = gradient_state_seed(cfg.seed, i);
            ScenarioConfig sc = scenario;
            sc.seed = state_seed;
            const GeometryRealization geom = generate_realization(sc);
            const Problem problem = Problem::from_scenario(sc, geom, true);

            std::mt19937_64 rng(state_seed ^ 0x9e3779b97f4a7c15ULL);
            const double lo = cfg.boundary_margin_rad;
            const double hi = std::max(lo, sc.theta_max_rad() - cfg.boundary_margin_rad);
            std::uniform_real_distribution<double> theta_dist(lo, hi), angle(0.0, kTwoPi);
            RotationState rotation(geom.bs_positions.size(), sc.theta_max_rad());
            for (std::size_t m = 0; m < rotation.size(); ++m)
            {
                const double theta = theta_dist(rng);
                rotation.set(m, theta, angle(rng));
            }
            std::vector<double> phases(static_cast<std::size_t>(problem.model.num_elements()));
            for (auto &p : phases)
                p = angle(rng);
            const PhaseState phase = PhaseState::from_phases(phases);
            const Beamformer bf = mmse_beamformer(rotation, phase, problem);

            const Eigen::MatrixX2d analytic = rate_rotation_gradient(bf, rotation, phase, problem);
            Eigen::VectorXd flat(2 * analytic.rows());
            for (Eigen::Index m = 0; m < analytic.rows(); ++m)
            {
                flat[2 * m] = analytic(m, 0);
                flat[2 * m + 1] = analytic(m, 1);
            }
            flat *= 1.0 + cfg.corruption;
            const double rot_err = relative_error(flat, fd_rotation_gradient(bf, rotation, phase, problem, cfg.fd_step));
            if (rot_err > result.worst_rotation_error || i == 0)
            {
                result.worst_rotation_error = std::max(rot_err, result.worst_rotation_error);
                result.worst_rotation_state = state_seed;
            }

            const PhaseSubproblem sub(bf, problem.model.evaluate(rotation), problem.powers, problem.noise);
            const FPAuxiliaries aux = sub.optimal_auxiliaries(phase.values());
            const Eigen::VectorXcd eg = sub.surrogate_gradient(phase.values(), aux) * (1.0 + cfg.corruption);
            Eigen::VectorXd eg_flat(2 * eg.size());
            for (Eigen::Index n = 0; n < eg.size(); ++n)
            {
                eg_flat[2 * n] = eg[n].real();
                eg_flat[2 * n + 1] = eg[n].imag();
            }
            const double ph_err = relative_error(eg_flat, fd_surrogate_gradient(sub, phase.values(), aux, cfg.fd_step));
            if (ph_err > result.worst_phase_error || i == 0)
            {
                result.worst_phase_error = std::max(ph_err, result.worst_phase_error);
                result.worst_phase_state = state_seed;
            }
            ++result.states_checked;
        }
        return result;
    }
}
