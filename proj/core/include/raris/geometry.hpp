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

#ifndef RARIS_GEOMETRY_HPP
#define RARIS_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace raris
{
    using Vec3 = Eigen::Vector3d;

    inline constexpr double kSpeedOfLight = 299792458.0; // m/s
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // Plane spanned by a uniform planar array. The BS array lies in the x-z plane,
    // the IRS panel in a plane parallel to y-z.
    enum class ArrayPlane
    {
        XZ,
        YZ
    };

    // Uniform planar array: count_axis1 elements along x (XZ) or y (YZ), count_axis2 along z.
    // Element (i1, i2) has flat index i2 * count_axis1 + i1.
    struct ArrayLayout
    {
        int count_axis1 = 1;
        int count_axis2 = 1;
        double spacing = 0.0; // m
        Vec3 center = Vec3::Zero();
        ArrayPlane plane = ArrayPlane::XZ;

        int size() const { return count_axis1 * count_axis2; }

        // Position of element (i1, i2); throws std::invalid_argument when out of range.
        Vec3 position(int i1, int i2) const;

        // All element positions in flat-index order.
        std::vector<Vec3> positions() const;

        // Distance between the two outermost element centers (0 for a single element).
        double aperture_diagonal() const;
    };

    Vec3 bs_antenna_position(int m_x, int m_z, const ArrayLayout &layout);
    Vec3 irs_element_position(int n_y, int n_z, const ArrayLayout &layout);

    /// Boresight of a rotatable antenna deflected by elevation `theta` and azimuth `phi`
    /// from the +y axis: [sin(theta)cos(phi), cos(theta), sin(theta)sin(phi)].
    Vec3 boresight(double theta, double phi);

    /// Partial derivatives of `boresight` with respect to (theta, phi).
    /// The phi column vanishes at theta = 0.
    std::pair<Vec3, Vec3> boresight_jacobian(double theta, double phi);

    /// Deflection angles whose boresight equals the unit vector `direction`.
    std::pair<double, double> deflection_toward(const Vec3 &direction);

    // (to - from) / |to - from|; throws std::invalid_argument for coincident points.
    Vec3 unit_direction(const Vec3 &from, const Vec3 &to);

    // 2 D^2 / lambda; throws std::invalid_argument for non-positive inputs.
    double fraunhofer_distance(double aperture_diagonal, double wavelength);

    // Maps any angle onto [0, 2 pi).
    double wrap_two_pi(double angle);

    struct DeflectionAngles
    {
        double theta = 0.0; // elevation off +y, radians
        double phi = 0.0;   // azimuth, radians

        bool operator==(const DeflectionAngles &) const = default;
    };

    // Per-antenna deflection angles. Every stored pair satisfies 0 <= theta <= theta_max
    // and 0 <= phi < 2 pi: theta is clamped and phi wrapped on assignment.
    class RotationState
    {
    public:
        RotationState() = default;
        RotationState(std::size_t count, double theta_max);

        std::size_t size() const { return angles_.size(); }
        double theta_max() const { return theta_max_; }

        double theta(std::size_t m) const { return angles_[m].theta; }
        double phi(std::size_t m) const { return angles_[m].phi; }
        const DeflectionAngles &operator[](std::size_t m) const { return angles_[m]; }
        std::span<const DeflectionAngles> angles() const { return angles_; }

        // Projects (theta, phi) onto the feasible set before storing.
        void set(std::size_t m, double theta, double phi);

        Vec3 boresight(std::size_t m) const { return raris::boresight(angles_[m].theta, angles_[m].phi); }

        bool operator==(const RotationState &) const = default;

    private:
        std::vector<DeflectionAngles> angles_;
        double theta_max_ = 0.0;
    };
}

#endif
