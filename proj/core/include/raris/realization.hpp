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

#ifndef RARIS_REALIZATION_HPP
#define RARIS_REALIZATION_HPP

#include "raris/geometry.hpp"
#include "raris/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace raris
{
    struct Scatterer
    {
        Vec3 position = Vec3::Zero();
        double rcs = 1.0;   // m^2, in [0.1, 1]
        double phase = 0.0; // radians, in [-pi, pi)
    };

    // Sampled node positions and scatterers of one Monte Carlo draw.
    struct GeometryRealization
    {
        Vec3 bs_center = Vec3::Zero();
        Vec3 irs_center = Vec3::Zero();
        Vec3 irs_normal{-1.0, 0.0, 0.0}; // unit
        std::vector<Vec3> bs_positions;
        std::vector<Vec3> irs_positions;
        std::vector<Vec3> user_positions;
        std::vector<Scatterer> direct_scatterers;
        std::vector<Scatterer> irs_scatterers;
        std::uint64_t seed = 0;
    };

    /// Deterministic draw from `cfg.seed`. Users, direct-link scatterers and IRS-side
    /// scatterers come from independent random streams, so the user draw does not depend
    /// on the scatterer counts and nothing depends on the array sizes. Scatterers are
    /// rejection-sampled outside a ball of `cfg.scatterer_exclusion_m` around the BS,
    /// the IRS and every user.
    GeometryRealization generate_realization(const ScenarioConfig &cfg);

    struct FieldRegionReport
    {
        double fraunhofer_distance_m = 0.0;
        double bs_distance_m = 0.0;
        bool bs_in_near_field = false;
        std::vector<double> user_distances_m;
        std::vector<int> users_not_in_far_field;
        std::vector<std::string> warnings;

        bool ok() const { return warnings.empty(); }
    };

    // Checks that the BS sits inside and every user outside the IRS Fraunhofer distance.
    // Violations are reported as warnings; nothing throws.
    FieldRegionReport validate_field_regions(const GeometryRealization &geom, const ScenarioConfig &cfg);
}

#endif
