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

#ifndef RARIS_GRADIENT_CHECK_HPP
#define RARIS_GRADIENT_CHECK_HPP

#include "raris/scenario.hpp"

#include <cstdint>

namespace raris
{
    struct GradientCheckConfig
    {
        int num_states = 100;
        double fd_step = 1e-6;
        // Sampled theta stays this far from 0 and theta_max, where the projection is not differentiable.
        double boundary_margin_rad = 1e-2;
        double rotation_tol = 1e-4;
        double phase_tol = 1e-5;
        std::uint64_t seed = 0;
        // Test hook: analytic gradients are scaled by (1 + corruption) before comparison.
        double corruption = 0.0;
    };

    struct GradientCheckResult
    {
        int states_checked = 0;
        double worst_rotation_error = 0.0; // relative, 2-norm
        double worst_phase_error = 0.0;
        std::uint64_t worst_rotation_state = 0;
        std::uint64_t worst_phase_state = 0;
        double rotation_tol = 0.0;
        double phase_tol = 0.0;

        bool rotation_passed() const { return worst_rotation_error < rotation_tol; }
        bool phase_passed() const { return worst_phase_error < phase_tol; }
        bool passed() const { return rotation_passed() && phase_passed(); }
    };

    /// Compares the analytic rotation gradient of the sum rate and the Euclidean gradient of
    /// the phase surrogate against central finite differences at random interior states.
    /// State i uses its own realization seed (reported as the state id) with random
    /// interior angles, random phases and the MMSE beamformer of that state.
    GradientCheckResult check_gradients(const ScenarioConfig &scenario, const GradientCheckConfig &cfg);

    // Seed of the i-th sampled state.
    std::uint64_t gradient_state_seed(std::uint64_t base_seed, int index);
}

#endif
