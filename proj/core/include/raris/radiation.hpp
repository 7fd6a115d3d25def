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

#ifndef RARIS_RADIATION_HPP
#define RARIS_RADIATION_HPP

#include "raris/geometry.hpp"

namespace raris
{
    // Axially symmetric cos^(2p) power pattern with zero back lobe, normalized so that
    // the pattern integrates to 4 pi over the sphere: G(eps) = G_max cos^(2p)(eps) for
    // cos(eps) > 0, G_max = 2 (2p + 1).
    class GainPattern
    {
    public:
        // Throws std::invalid_argument for directivity_exponent < 1.
        explicit GainPattern(double directivity_exponent);

        double directivity_exponent() const { return p_; }
        double peak_gain() const { return peak_gain_; }

        // Unchecked hot-path helpers; `c` is a boresight cosine.
        double gain_unchecked(double c) const;
        double amplitude_unchecked(double c) const;       // sqrt(G)
        double amplitude_slope_unchecked(double c) const; // d sqrt(G) / dc, 0 for c <= 0

    private:
        double pow_p(double c) const;

        double p_;
        double peak_gain_;
        double sqrt_peak_gain_;
    };

    // Linear power gain toward a direction with boresight cosine `cos_eps`.
    // Cosines within 1e-9 outside [-1, 1] are clamped; anything further throws.
    double antenna_gain(double cos_eps, const GainPattern &pattern);

    // Same functional form, used for IRS incidence and reflection gains.
    double irs_element_gain(double cos_theta, const GainPattern &pattern);

    // Derivative of G_max max(c, 0)^(2p) in c, with the zero branch selected at c = 0.
    double gain_subgradient(double cos_eps, const GainPattern &pattern);

    struct AmplitudeGradient
    {
        double d_theta = 0.0;
        double d_phi = 0.0;
    };

    /// Gradient of sqrt(G(boresight(theta, phi)^T d)) with respect to the deflection angles.
    /// Returns zeros when the direction falls in the zero-gain half space. `d` must be a
    /// unit vector (1e-9 tolerance).
    AmplitudeGradient amplitude_rotation_gradient(double theta, double phi, const Vec3 &d,
                                                  const GainPattern &pattern);
}

#endif
