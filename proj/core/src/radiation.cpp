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

#include "raris/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace raris
{
    namespace
    {
        constexpr double kCosineSlack = 1e-9;
        constexpr double kUnitSlack = 1e-9;

        double checked_cosine(double c, const char *where)
        {
            if (!(c >= -1.0 - kCosineSlack && c <= 1.0 + kCosineSlack))
                throw std::invalid_argument(std::string(where) + ": cosine " + std::to_string(c) +
                                            " outside [-1, 1]");
            return std::clamp(c, -1.0, 1.0);
        }
    }

    GainPattern::GainPattern(double directivity_exponent)
        : p_(directivity_exponent), peak_gain_(2.0 * (2.0 * directivity_exponent + 1.0)),
          sqrt_peak_gain_(std::sqrt(peak_gain_))
    {
        if (!(directivity_exponent >= 1.0))
            throw std::invalid_argument("GainPattern: directivity exponent must be >= 1");
    }

    double GainPattern::pow_p(double c) const
    {
        // Table defaults are p = 2 and p = 1.5; skip std::pow for those.
        if (p_ == 2.0)
            return c * c;
        if (p_ == 1.0)
            return c;
        if (p_ == 1.5)
            return c * std::sqrt(c);
        return std::pow(c, p_);
    }

    double GainPattern::gain_unchecked(double c) const
    {
        if (c <= 0.0)
            return 0.0;
        const double a = pow_p(c);
        return peak_gain_ * a * a;
    }

    double GainPattern::amplitude_unchecked(double c) const
    {
        return c > 0.0 ? sqrt_peak_gain_ * pow_p(c) : 0.0;
    }

    double GainPattern::amplitude_slope_unchecked(double c) const
    {
        if (c <= 0.0)
            return 0.0;
        const double cpm1 = (p_ == 2.0) ? c : (p_ == 1.0 ? 1.0 : std::pow(c, p_ - 1.0));
        return sqrt_peak_gain_ * p_ * cpm1;
    }

    double antenna_gain(double cos_eps, const GainPattern &pattern)
    {
        return pattern.gain_unchecked(checked_cosine(cos_eps, "antenna_gain"));
    }

    double irs_element_gain(double cos_theta, const GainPattern &pattern)
    {
        return pattern.gain_unchecked(checked_cosine(cos_theta, "irs_element_gain"));
    }

    double gain_subgradient(double cos_eps, const GainPattern &pattern)
    {
        const double c = checked_cosine(cos_eps, "gain_subgradient");
        if (c <= 0.0)
            return 0.0;
        const double p = pattern.directivity_exponent();
        return 2.0 * p * pattern.peak_gain() * std::pow(c, 2.0 * p - 1.0);
    }

    AmplitudeGradient amplitude_rotation_gradient(double theta, double phi, const Vec3 &d,
                                                  const GainPattern &pattern)
    {
        if (std::abs(d.norm() - 1.0) > kUnitSlack)
            throw std::invalid_argument("amplitude_rotation_gradient: direction is not a unit vector");

        const double c = boresight(theta, phi).dot(d);
        const double slope = pattern.amplitude_slope_unchecked(c);
        if (slope == 0.0)
            return {};
        const auto [df_dtheta, df_dphi] = boresight_jacobian(theta, phi);
        return {slope * df_dtheta.dot(d), slope * df_dphi.dot(d)};
    }
}
