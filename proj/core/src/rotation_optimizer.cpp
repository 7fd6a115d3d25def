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

#include <algorithm>
#include <cmath>

namespace raris
{
    namespace
    {
        // P_C(rotation + step * gradient).
        RotationState projected_step(const RotationState &rotation, const Eigen::MatrixX2d &gradient, double step)
        {
            RotationState out = rotation;
            for (std::size_t m = 0; m < rotation.size(); ++m)
            {
                const auto i = static_cast<Eigen::Index>(m);
                out.set(m, rotation.theta(m) + step * gradient(i, 0), rotation.phi(m) + step * gradient(i, 1));
            }
            return out;
        }

        // <gradient, displacement> with theta displacements after clamping and phi
        // displacements measured before wrapping.
        double directional_gain(const RotationState &from, const RotationState &to, const Eigen::MatrixX2d &gradient,
                                double step)
        {
            double acc = 0.0;
            for (std::size_t m = 0; m < from.size(); ++m)
            {
                const auto i = static_cast<Eigen::Index>(m);
                acc += gradient(i, 0) * (to.theta(m) - from.theta(m));
                acc += gradient(i, 1) * (step * gradient(i, 1));
            }
            return acc;
        }
    }

    double projected_gradient_norm(const RotationState &rotation, const Eigen::MatrixX2d &gradient)
    {
        double acc = 0.0;
        for (std::size_t m = 0; m < rotation.size(); ++m)
        {
            const auto i = static_cast<Eigen::Index>(m);
            const double theta = std::clamp(rotation.theta(m) + gradient(i, 0), 0.0, rotation.theta_max());
            const double dt = theta - rotation.theta(m);
            acc += dt * dt + gradient(i, 1) * gradient(i, 1);
        }
        return std::sqrt(acc);
    }

    RotationState optimize_rotations(const Beamformer &bf, const RotationState &init, const PhaseState &phase,
                                     const Problem &problem, const PgaConfig &cfg, PgaStats *stats,
                                     const std::function<void(const RotationState &)> &on_iterate)
    {
        PgaStats local;
        RotationState current = init;
        double rate = sum_rate(bf, current, phase, problem);

        for (int it = 0; it < cfg.max_iters; ++it)
        {
            const Eigen::MatrixX2d grad = rate_rotation_gradient(bf, current, phase, problem);
            local.projected_gradient_norm = projected_gradient_norm(current, grad);
            if (local.projected_gradient_norm < cfg.grad_tol)
                break;
            ++local.iterations;

            const double largest = grad.cwiseAbs().maxCoeff();
            double step = cfg.initial_step / largest;
            bool accepted = false;
            for (int b = 0; b < cfg.max_backtracks; ++b, step *= cfg.armijo_shrink)
            {
                RotationState trial = projected_step(current, grad, step);
                const double trial_rate = sum_rate(bf, trial, phase, problem);
                const double gain = directional_gain(current, trial, grad, step);
                if (trial_rate >= rate + cfg.armijo_c1 * gain)
                {
                    accepted = gain > 0.0 || trial_rate > rate;
                    if (accepted)
                    {
                        current = std::move(trial);
                        rate = trial_rate;
                    }
                    break;
                }
                ++local.backtracks;
            }
            if (!accepted)
                break;
            ++local.accepted_steps;
            if (on_iterate)
                on_iterate(current);
        }

        if (stats)
        {
            stats->iterations += local.iterations;
            stats->accepted_steps += local.accepted_steps;
            stats->backtracks += local.backtracks;
            stats->projected_gradient_norm = local.projected_gradient_norm;
        }
        return current;
    }
}
