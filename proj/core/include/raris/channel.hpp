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

#ifndef RARIS_CHANNEL_HPP
#define RARIS_CHANNEL_HPP

#include "raris/geometry.hpp"
#include "raris/radiation.hpp"
#include "raris/realization.hpp"
#include "raris/scenario.hpp"

#include <Eigen/Core>

#include <complex>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace raris
{
    using cdouble = std::complex<double>;

    // Free-space LoS gain (lambda / 4 pi d) exp(-j 2 pi d / lambda).
    cdouble path_gain_los(double distance, double wavelength);

    // Single-bounce gain lambda sqrt(rcs) / (4 pi t d) exp(-j 2 pi (t + d) / lambda + j phase).
    cdouble path_gain_nlos(double user_to_scatterer, double scatterer_to_node, double rcs, double phase,
                           double wavelength);

    // Entry m: exp(j 2 pi / lambda d^T b_m).
    Eigen::VectorXcd bs_array_response(const Vec3 &direction, std::span<const Vec3> bs_positions,
                                       double wavelength);

    // Entry n: exp(j 2 pi / lambda d^T (r_n - r_0)).
    Eigen::VectorXcd irs_array_response(const Vec3 &direction, std::span<const Vec3> irs_positions,
                                        const Vec3 &reference, double wavelength);

    // Unit-modulus IRS reflection coefficients.
    class PhaseState
    {
    public:
        static constexpr double kModulusTolerance = 1e-12;

        PhaseState() = default;
        // Throws std::invalid_argument if any entry is off the unit circle by more than 1e-12.
        explicit PhaseState(Eigen::VectorXcd values);

        static PhaseState ones(Eigen::Index n);
        static PhaseState from_phases(std::span<const double> phases);
        // Entrywise x / |x|; zero entries map to 1.
        static PhaseState retract(const Eigen::VectorXcd &x);

        const Eigen::VectorXcd &values() const { return v_; }
        Eigen::Index size() const { return v_.size(); }
        double max_modulus_error() const;

    private:
        Eigen::VectorXcd v_;
    };

    // All channel components for one rotation state.
    struct ChannelSet
    {
        Eigen::MatrixXcd direct;   // M x K, column k is h_{d,k}
        Eigen::MatrixXcd irs_bs;   // M x N
        Eigen::MatrixXcd user_irs; // N x K, column k is h_{r,k}

        bool has_irs() const { return irs_bs.cols() > 0; }
        // Q_k = H_RB diag(h_{r,k}).
        Eigen::MatrixXcd cascaded(int k) const;
        // M x K, column k is h_{d,k} + Q_k v.
        Eigen::MatrixXcd effective(const PhaseState &phase) const;
    };

    // h_{d,k} + Q_k v; throws std::invalid_argument on dimension mismatch.
    Eigen::VectorXcd effective_channel(const ChannelSet &channels, const PhaseState &phase, int user);

    // Entry (m, i) holds the only nonzero entry of dh_i / dtheta_m (resp. dphi_m).
    struct ChannelDerivative
    {
        Eigen::MatrixXcd d_theta;
        Eigen::MatrixXcd d_phi;
    };

    /// Precomputes every rotation-independent factor of the channel (path gains, array
    /// responses, spherical-wave IRS-BS coefficients with the IRS reflection pattern
    /// folded in, user-IRS channels) so that rotation-dependent quantities only pay for
    /// the BS antenna pattern.
    class ChannelModel
    {
    public:
        // `include_irs = false` drops the reflected link entirely (N = 0).
        ChannelModel(const GeometryRealization &geom, const ScenarioConfig &cfg, bool include_irs = true);

        int num_antennas() const { return num_antennas_; }
        int num_elements() const { return num_elements_; }
        int num_users() const { return num_users_; }
        double theta_max() const { return theta_max_; }
        const GainPattern &bs_pattern() const { return bs_pattern_; }

        ChannelSet evaluate(const RotationState &rotation) const;
        Eigen::VectorXcd direct_channel(const RotationState &rotation, int user) const;
        Eigen::MatrixXcd irs_bs_channel(const RotationState &rotation) const;
        Eigen::VectorXcd user_irs_channel(int user) const;
        const Eigen::MatrixXcd &user_irs() const { return user_irs_; }

        // Effective channels (M x K) without materializing H_RB.
        Eigen::MatrixXcd effective_channels(const RotationState &rotation, const PhaseState &phase) const;

        ChannelDerivative rotation_derivatives(const RotationState &rotation, const PhaseState &phase) const;
        // (d h_user / d theta_m, d h_user / d phi_m) at entry `antenna`.
        std::pair<cdouble, cdouble> rotation_derivative(const RotationState &rotation, const PhaseState &phase,
                                                        int user, int antenna) const;

    private:
        struct Path
        {
            cdouble gain;
            Vec3 direction;
            Eigen::VectorXcd response; // over BS antennas
        };

        void check_rotation(const RotationState &rotation) const;
        void check_phase(const PhaseState &phase) const;
        Eigen::MatrixXcd weighted_user_irs(const PhaseState &phase) const; // h_{r,k} o v, N x K

        int num_antennas_ = 0;
        int num_elements_ = 0;
        int num_users_ = 0;
        double theta_max_ = 0.0;
        GainPattern bs_pattern_;
        std::vector<std::vector<Path>> direct_paths_; // per user
        Eigen::MatrixXcd irs_base_;                   // M x N
        Eigen::MatrixXd arrival_x_, arrival_y_, arrival_z_; // M x N unit vectors BS antenna -> RE
        Eigen::MatrixXcd user_irs_;                   // N x K
    };

    Eigen::VectorXcd direct_channel(const RotationState &rotation, int user, const GeometryRealization &geom,
                                    const ScenarioConfig &cfg);
    Eigen::VectorXcd user_irs_channel(int user, const GeometryRealization &geom, const ScenarioConfig &cfg);
    Eigen::MatrixXcd irs_bs_channel(const RotationState &rotation, const GeometryRealization &geom,
                                    const ScenarioConfig &cfg);
    std::pair<cdouble, cdouble> channel_rotation_gradient(const RotationState &rotation, const PhaseState &phase,
                                                          int user, int antenna, const GeometryRealization &geom,
                                                          const ScenarioConfig &cfg);

    // Long-format dump with header `component,k,m,n,re,im`; unused indices are -1.
    void write_channel_csv(std::ostream &os, const ChannelSet &channels);
}

#endif
