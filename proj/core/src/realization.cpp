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

#include "raris/realization.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace raris
{
    namespace
    {
        enum class Stream : std::uint32_t
        {
            Users = 1,
            DirectScatterers = 2,
            IrsScatterers = 3,
        };

        std::mt19937_64 make_stream(std::uint64_t seed, Stream stream)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(stream)};
            return std::mt19937_64(seq);
        }

        double uniform(std::mt19937_64 &rng, const Interval &iv)
        {
            if (iv.lo == iv.hi)
                return iv.lo;
            return std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
        }

        double uniform_phase(std::mt19937_64 &rng)
        {
            const double x = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
            return x >= std::numbers::pi ? -std::numbers::pi : x;
        }

        std::vector<Scatterer> sample_scatterers(std::mt19937_64 &rng, int count, const Box &box,
                                                 const std::vector<Vec3> &keep_out, double radius)
        {
            constexpr int kMaxAttempts = 100000;
            std::vector<Scatterer> out;
            out.reserve(count);
            for (int i = 0; i < count; ++i)
            {
                Vec3 pos;
                int attempts = 0;
                bool clear = false;
                while (!clear)
                {
                    if (++attempts > kMaxAttempts)
                        throw std::invalid_argument("generate_realization: scatterer box is covered by exclusion zones");
                    pos = Vec3(uniform(rng, box.x), uniform(rng, box.y), uniform(rng, box.z));
                    clear = true;
                    for (const auto &node : keep_out)
                        if ((pos - node).norm() < radius)
                        {
                            clear = false;
                            break;
                        }
                }
                Scatterer s;
                s.position = pos;
                s.rcs = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
                s.phase = uniform_phase(rng);
                out.push_back(s);
            }
            return out;
        }
    }

    GeometryRealization generate_realization(const ScenarioConfig &cfg)
    {
        validate(cfg);

        GeometryRealization g;
        g.seed = cfg.seed;
        g.bs_center = cfg.bs_center;
        g.irs_center = cfg.irs_center;
        g.irs_normal = cfg.irs_normal_unit();
        g.bs_positions = cfg.bs_layout().positions();
        g.irs_positions = cfg.irs_layout().positions();

        auto user_rng = make_stream(cfg.seed, Stream::Users);
        g.user_positions.reserve(cfg.num_users);
        for (int k = 0; k < cfg.num_users; ++k)
        {
            const double x = uniform(user_rng, cfg.user_region.x);
            const double y = uniform(user_rng, cfg.user_region.y);
            g.user_positions.emplace_back(x, y, cfg.user_region.z);
        }

        std::vector<Vec3> keep_out{cfg.bs_center, cfg.irs_center};
        keep_out.insert(keep_out.end(), g.user_positions.begin(), g.user_positions.end());

        auto direct_rng = make_stream(cfg.seed, Stream::DirectScatterers);
        g.direct_scatterers = sample_scatterers(direct_rng, cfg.num_direct_scatterers, cfg.direct_scatterer_box,
                                                keep_out, cfg.scatterer_exclusion_m);
        auto irs_rng = make_stream(cfg.seed, Stream::IrsScatterers);
        g.irs_scatterers = sample_scatterers(irs_rng, cfg.num_irs_scatterers, cfg.irs_scatterer_box, keep_out,
                                             cfg.scatterer_exclusion_m);
        return g;
    }

    FieldRegionReport validate_field_regions(const GeometryRealization &geom, const ScenarioConfig &cfg)
    {
        FieldRegionReport r;
        const double diag = cfg.irs_layout().aperture_diagonal();
        r.fraunhofer_distance_m = diag > 0.0 ? fraunhofer_distance(diag, cfg.wavelength()) : 0.0;
        r.bs_distance_m = (geom.bs_center - geom.irs_center).norm();
        r.bs_in_near_field = r.bs_distance_m < r.fraunhofer_distance_m;
        if (!r.bs_in_near_field)
            r.warnings.push_back("BS at " + std::to_string(r.bs_distance_m) +
                                 " m is outside the IRS near field (Fraunhofer distance " +
                                 std::to_string(r.fraunhofer_distance_m) + " m)");

        for (std::size_t k = 0; k < geom.user_positions.size(); ++k)
        {
            const double d = (geom.user_positions[k] - geom.irs_center).norm();
            r.user_distances_m.push_back(d);
            if (!(d > r.fraunhofer_distance_m))
            {
                r.users_not_in_far_field.push_back(static_cast<int>(k));
                r.warnings.push_back("user " + std::to_string(k) + " at " + std::to_string(d) +
                                     " m is inside the IRS Fraunhofer distance");
            }
        }
        return r;
    }
}
