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

#include "raris/scenario.hpp"

#include <cmath>
#include <numbers>

namespace raris
{
    double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    double ScenarioConfig::theta_max_rad() const { return theta_max_deg * std::numbers::pi / 180.0; }
    double ScenarioConfig::tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
    double ScenarioConfig::noise_w() const { return dbm_to_watts(noise_dbm); }

    double ScenarioConfig::direct_attenuation_amplitude() const
    {
        return std::pow(10.0, -direct_attenuation_db / 20.0);
    }

    ArrayLayout ScenarioConfig::bs_layout() const
    {
        return {bs_count_x, bs_count_z, bs_spacing(), bs_center, ArrayPlane::XZ};
    }

    ArrayLayout ScenarioConfig::irs_layout() const
    {
        return {irs_count_y, irs_count_z, irs_spacing_m, irs_center, ArrayPlane::YZ};
    }

    Vec3 ScenarioConfig::irs_normal_unit() const
    {
        if (irs_normal)
            return irs_normal->normalized();
        const Vec3 centroid(0.5 * (user_region.x.lo + user_region.x.hi), 0.5 * (user_region.y.lo + user_region.y.hi),
                            user_region.z);
        Vec3 sum = Vec3::Zero();
        for (const Vec3 &target : {bs_center, centroid})
        {
            const Vec3 d = target - irs_center;
            if (d.norm() > 0.0)
                sum += d.normalized();
        }
        if (sum.norm() < 1e-12)
            throw ConfigError("scenario.irs.normal", "cannot be derived from the geometry; set it explicitly");
        return sum.normalized();
    }

    namespace
    {
        void require(bool ok, const char *field, const char *message)
        {
            if (!ok)
                throw ConfigError(field, message);
        }

        void require_interval(const Interval &iv, const char *field)
        {
            require(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.hi, field,
                    "interval must be finite with lo <= hi");
        }

        void require_finite(const Vec3 &v, const char *field)
        {
            require(v.allFinite(), field, "must be finite");
        }
    }

    void validate(const ScenarioConfig &c)
    {
        require(c.carrier_hz > 0.0, "scenario.carrier_hz", "must be positive");
        require(std::isfinite(c.tx_power_dbm), "scenario.tx_power_dbm", "must be finite");
        require(std::isfinite(c.noise_dbm), "scenario.noise_dbm", "must be finite");
        require(c.direct_attenuation_db >= 0.0, "scenario.direct_attenuation_db", "must be non-negative");
        require(c.bs_count_x > 0, "scenario.bs.count_x", "must be a positive integer");
        require(c.bs_count_z > 0, "scenario.bs.count_z", "must be a positive integer");
        require(c.irs_count_y > 0, "scenario.irs.count_y", "must be a positive integer");
        require(c.irs_count_z > 0, "scenario.irs.count_z", "must be a positive integer");
        require(c.num_users > 0, "scenario.num_users", "must be a positive integer");
        require(c.theta_max_deg >= 0.0 && c.theta_max_deg <= 180.0, "scenario.theta_max_deg",
                "must lie in [0, 180]");
        require(c.directivity_bs >= 1.0, "scenario.directivity_p", "must be >= 1");
        require(c.directivity_irs >= 1.0, "scenario.directivity_p_irs", "must be >= 1");
        require(c.num_direct_scatterers >= 0, "scenario.num_direct_scatterers", "must be non-negative");
        require(c.num_irs_scatterers >= 0, "scenario.num_irs_scatterers", "must be non-negative");
        require_finite(c.bs_center, "scenario.bs.center_m");
        require_finite(c.irs_center, "scenario.irs.center_m");
        require(!c.irs_normal || (c.irs_normal->allFinite() && c.irs_normal->norm() > 0.0), "scenario.irs.normal",
                "must be a finite non-zero vector");
        if (!c.irs_normal)
            (void)c.irs_normal_unit();
        require(!c.bs_spacing_m || *c.bs_spacing_m > 0.0, "scenario.bs.spacing_m", "must be positive");
        require(c.irs_spacing_m > 0.0, "scenario.irs.spacing_m", "must be positive");
        require_interval(c.user_region.x, "scenario.user_region.x_range_m");
        require_interval(c.user_region.y, "scenario.user_region.y_range_m");
        require(std::isfinite(c.user_region.z), "scenario.user_region.z_m", "must be finite");
        require_interval(c.direct_scatterer_box.x, "scenario.direct_scatterer_box.x_range_m");
        require_interval(c.direct_scatterer_box.y, "scenario.direct_scatterer_box.y_range_m");
        require_interval(c.direct_scatterer_box.z, "scenario.direct_scatterer_box.z_range_m");
        require_interval(c.irs_scatterer_box.x, "scenario.irs_scatterer_box.x_range_m");
        require_interval(c.irs_scatterer_box.y, "scenario.irs_scatterer_box.y_range_m");
        require_interval(c.irs_scatterer_box.z, "scenario.irs_scatterer_box.z_range_m");
        require(c.scatterer_exclusion_m >= 0.0, "scenario.scatterer_exclusion_m", "must be non-negative");
    }
}
