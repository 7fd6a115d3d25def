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

#ifndef RARIS_SCENARIO_HPP
#define RARIS_SCENARIO_HPP

#include "raris/geometry.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace raris
{
    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;
    };

    struct Box
    {
        Interval x, y, z;
    };

    // Users are placed uniformly on the rectangle x × y at height z.
    struct UserRegion
    {
        Interval x{-3.0, 3.0};
        Interval y{8.0, 15.0};
        double z = 0.0;
    };

    // Every physical input of one experiment. Defaults are the reference deployment:
    // 28 GHz, 4x4 BS array at the origin, 8x8 IRS at [1.5, 2, 2], four users.
    struct ScenarioConfig
    {
        double carrier_hz = 28e9;
        double tx_power_dbm = 17.0;
        double noise_dbm = -72.0;
        double direct_attenuation_db = 20.0;

        int bs_count_x = 4;
        int bs_count_z = 4;
        int irs_count_y = 8;
        int irs_count_z = 8;
        int num_users = 4;

        double theta_max_deg = 60.0;
        double directivity_bs = 2.0;  // p
        double directivity_irs = 1.5; // p_R

        int num_direct_scatterers = 3; // L
        int num_irs_scatterers = 2;    // P

        Vec3 bs_center{0.0, 0.0, 0.0};
        Vec3 irs_center{1.5, 2.0, 2.0};
        // Unset means the bisector of the directions from the IRS center toward the BS center
        // and toward the user-region centroid.
        std::optional<Vec3> irs_normal{};
        UserRegion user_region{};

        // Unset means half a wavelength.
        std::optional<double> bs_spacing_m{};
        // 12 cm panel side across 8 elements; the outer element centers span a 12*sqrt(2) cm diagonal.
        double irs_spacing_m = 0.12 / 7.0;

        Box direct_scatterer_box{{-5.0, 5.0}, {2.0, 8.0}, {0.0, 3.0}};
        Box irs_scatterer_box{{-3.0, 3.0}, {4.0, 12.0}, {0.0, 3.0}};
        double scatterer_exclusion_m = 0.5;

        std::uint64_t seed = 0;

        double wavelength() const { return kSpeedOfLight / carrier_hz; }
        double bs_spacing() const { return bs_spacing_m.value_or(0.5 * wavelength()); }
        Vec3 irs_normal_unit() const;
        double theta_max_rad() const;
        double tx_power_w() const;
        double noise_w() const;
        double direct_attenuation_amplitude() const;
        int num_bs_antennas() const { return bs_count_x * bs_count_z; }
        int num_irs_elements() const { return irs_count_y * irs_count_z; }

        ArrayLayout bs_layout() const;
        ArrayLayout irs_layout() const;
    };

    double dbm_to_watts(double dbm);

    // Raised for invalid configuration values; `field()` names the offending key.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(std::string field, const std::string &message)
            : std::invalid_argument(field + ": " + message), field_(std::move(field))
        {
        }
        const std::string &field() const { return field_; }

    private:
        std::string field_;
    };

    // Throws ConfigError naming the first invalid field.
    void validate(const ScenarioConfig &cfg);
}

#endif
