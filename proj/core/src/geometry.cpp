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

#include "raris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace raris
{
    Vec3 ArrayLayout::position(int i1, int i2) const
    {
        if (i1 < 0 || i1 >= count_axis1 || i2 < 0 || i2 >= count_axis2)
            throw std::invalid_argument("ArrayLayout::position: index (" + std::to_string(i1) + ", " +
                                        std::to_string(i2) + ") outside " + std::to_string(count_axis1) +
                                        "x" + std::to_string(count_axis2) + " array");

        const double o1 = (i1 - 0.5 * (count_axis1 - 1)) * spacing;
        const double o2 = (i2 - 0.5 * (count_axis2 - 1)) * spacing;
        Vec3 offset = (plane == ArrayPlane::XZ) ? Vec3(o1, 0.0, o2) : Vec3(0.0, o1, o2);
        return center + offset;
    }

    std::vector<Vec3> ArrayLayout::positions() const
    {
        std::vector<Vec3> out;
        out.reserve(size());
        for (int i2 = 0; i2 < count_axis2; ++i2)
            for (int i1 = 0; i1 < count_axis1; ++i1)
                out.push_back(position(i1, i2));
        return out;
    }

    double ArrayLayout::aperture_diagonal() const
    {
        const double s1 = (count_axis1 - 1) * spacing;
        const double s2 = (count_axis2 - 1) * spacing;
        return std::hypot(s1, s2);
    }

    Vec3 bs_antenna_position(int m_x, int m_z, const ArrayLayout &layout)
    {
        if (layout.plane != ArrayPlane::XZ)
            throw std::invalid_argument("bs_antenna_position: BS layout must lie in the x-z plane");
        return layout.position(m_x, m_z);
    }

    Vec3 irs_element_position(int n_y, int n_z, const ArrayLayout &layout)
    {
        if (layout.plane != ArrayPlane::YZ)
            throw std::invalid_argument("irs_element_position: IRS layout must lie in the y-z plane");
        return layout.position(n_y, n_z);
    }

    Vec3 boresight(double theta, double phi)
    {
        const double st = std::sin(theta);
        return {st * std::cos(phi), std::cos(theta), st * std::sin(phi)};
    }

    std::pair<Vec3, Vec3> boresight_jacobian(double theta, double phi)
    {
        const double st = std::sin(theta), ct = std::cos(theta);
        const double sp = std::sin(phi), cp = std::cos(phi);
        return {Vec3(ct * cp, -st, ct * sp), Vec3(-st * sp, 0.0, st * cp)};
    }

    std::pair<double, double> deflection_toward(const Vec3 &direction)
    {
        const double theta = std::acos(std::clamp(direction.y(), -1.0, 1.0));
        const double phi = wrap_two_pi(std::atan2(direction.z(), direction.x()));
        return {theta, phi};
    }

    Vec3 unit_direction(const Vec3 &from, const Vec3 &to)
    {
        const Vec3 diff = to - from;
        const double norm = diff.norm();
        if (!(norm > 0.0))
            throw std::invalid_argument("unit_direction: coincident points");
        return diff / norm;
    }

    double fraunhofer_distance(double aperture_diagonal, double wavelength)
    {
        if (!(aperture_diagonal > 0.0) || !(wavelength > 0.0))
            throw std::invalid_argument("fraunhofer_distance: aperture and wavelength must be positive");
        return 2.0 * aperture_diagonal * aperture_diagonal / wavelength;
    }

    double wrap_two_pi(double angle)
    {
        double r = std::fmod(angle, kTwoPi);
        if (r < 0.0)
            r += kTwoPi;
        if (r >= kTwoPi) // fmod/addition rounding
            r = 0.0;
        return r;
    }

    RotationState::RotationState(std::size_t count, double theta_max)
        : angles_(count), theta_max_(theta_max)
    {
        if (!(theta_max >= 0.0))
            throw std::invalid_argument("RotationState: theta_max must be non-negative");
    }

    void RotationState::set(std::size_t m, double theta, double phi)
    {
        angles_.at(m) = {std::clamp(theta, 0.0, theta_max_), wrap_two_pi(phi)};
    }
}
