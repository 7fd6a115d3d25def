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

#include "raris/channel.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace raris
{
    namespace
    {
        constexpr double kUnitSlack = 1e-9;

        void require_unit(const Vec3 &d, const char *where)
        {
            if (std::abs(d.norm() - 1.0) > kUnitSlack)
                throw std::invalid_argument(std::string(where) + ": direction is not a unit vector");
        }

        cdouble phasor(double angle) { return std::polar(1.0, angle); }
    }

    cdouble path_gain_los(double distance, double wavelength)
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("path_gain_los: distance must be positive");
        const double magnitude = wavelength / (4.0 * std::numbers::pi * distance);
        return magnitude * phasor(-kTwoPi * distance / wavelength);
    }

    cdouble path_gain_nlos(double user_to_scatterer, double scatterer_to_node, double rcs, double phase,
                           double wavelength)
    {
        if (!(user_to_scatterer > 0.0) || !(scatterer_to_node > 0.0))
            throw std::invalid_argument("path_gain_nlos: distances must be positive");
        if (!(rcs > 0.0))
            throw std::invalid_argument("path_gain_nlos: radar cross section must be positive");
        const double magnitude =
            wavelength * std::sqrt(rcs) / (4.0 * std::numbers::pi * user_to_scatterer * scatterer_to_node);
        return magnitude * phasor(-kTwoPi * (user_to_scatterer + scatterer_to_node) / wavelength + phase);
    }

    Eigen::VectorXcd bs_array_response(const Vec3 &direction, std::span<const Vec3> bs_positions,
                                       double wavelength)
    {
        require_unit(direction, "bs_array_response");
        Eigen::VectorXcd a(static_cast<Eigen::Index>(bs_positions.size()));
        const double k0 = kTwoPi / wavelength;
        for (std::size_t m = 0; m < bs_positions.size(); ++m)
            a[static_cast<Eigen::Index>(m)] = phasor(k0 * direction.dot(bs_positions[m]));
        return a;
    }

    Eigen::VectorXcd irs_array_response(const Vec3 &direction, std::span<const Vec3> irs_positions,
                                        const Vec3 &reference, double wavelength)
    {
        require_unit(direction, "irs_array_response");
        Eigen::VectorXcd a(static_cast<Eigen::Index>(irs_positions.size()));
        const double k0 = kTwoPi / wavelength;
        for (std::size_t n = 0; n < irs_positions.size(); ++n)
            a[static_cast<Eigen::Index>(n)] = phasor(k0 * direction.dot(irs_positions[n] - reference));
        return a;
    }

    // ---- PhaseState ----------------------------------------------------------

    PhaseState::PhaseState(Eigen::VectorXcd values) : v_(std::move(values))
    {
        if (max_modulus_error() >= kModulusTolerance)
            throw std::invalid_argument("PhaseState: entries must have unit modulus");
    }

    PhaseState PhaseState::ones(Eigen::Index n)
    {
        PhaseState s;
        s.v_ = Eigen::VectorXcd::Ones(n);
        return s;
    }

    PhaseState PhaseState::from_phases(std::span<const double> phases)
    {
        PhaseState s;
        s.v_.resize(static_cast<Eigen::Index>(phases.size()));
        for (std::size_t n = 0; n < phases.size(); ++n)
            s.v_[static_cast<Eigen::Index>(n)] = phasor(phases[n]);
        return s;
    }

    PhaseState PhaseState::retract(const Eigen::VectorXcd &x)
    {
        PhaseState s;
        s.v_.resize(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
        {
            const double r = std::abs(x[n]);
            s.v_[n] = r > 0.0 ? x[n] / r : cdouble(1.0, 0.0);
        }
        return s;
    }

    double PhaseState::max_modulus_error() const
    {
        double worst = 0.0;
        for (Eigen::Index n = 0; n < v_.size(); ++n)
            worst = std::max(worst, std::abs(std::abs(v_[n]) - 1.0));
        return worst;
    }

    // ---- ChannelSet ----------------------------------------------------------

    Eigen::MatrixXcd ChannelSet::cascaded(int k) const
    {
        return irs_bs * user_irs.col(k).asDiagonal();
    }

    Eigen::MatrixXcd ChannelSet::effective(const PhaseState &phase) const
    {
        if (!has_irs())
            return direct;
        if (phase.size() != irs_bs.cols())
            throw std::invalid_argument("ChannelSet::effective: phase vector length does not match IRS size");
        const Eigen::MatrixXcd weighted = user_irs.array().colwise() * phase.values().array();
        return direct + irs_bs * weighted;
    }

    Eigen::VectorXcd effective_channel(const ChannelSet &channels, const PhaseState &phase, int user)
    {
        if (user < 0 || user >= channels.direct.cols())
            throw std::invalid_argument("effective_channel: user index out of range");
        if (!channels.has_irs())
            return channels.direct.col(user);
        if (phase.size() != channels.irs_bs.cols() || channels.user_irs.rows() != channels.irs_bs.cols())
            throw std::invalid_argument("effective_channel: dimension mismatch");
        return channels.direct.col(user) + channels.cascaded(user) * phase.values();
    }

    // ---- ChannelModel --------------------------------------------------------

    ChannelModel::ChannelModel(const GeometryRealization &geom, const ScenarioConfig &cfg, bool include_irs)
        : num_antennas_(static_cast<int>(geom.bs_positions.size())),
          num_elements_(include_irs ? static_cast<int>(geom.irs_positions.size()) : 0),
          num_users_(static_cast<int>(geom.user_positions.size())), theta_max_(cfg.theta_max_rad()),
          bs_pattern_(cfg.directivity_bs)
    {
        const double lambda = cfg.wavelength();
        const double attenuation = cfg.direct_attenuation_amplitude();
        const GainPattern irs_pattern(cfg.directivity_irs);

        direct_paths_.resize(num_users_);
        for (int k = 0; k < num_users_; ++k)
        {
            const Vec3 &u = geom.user_positions[k];
            auto &paths = direct_paths_[k];
            const Vec3 los = unit_direction(geom.bs_center, u);
            paths.push_back({attenuation * path_gain_los((u - geom.bs_center).norm(), lambda), los,
                             bs_array_response(los, geom.bs_positions, lambda)});
            for (const auto &s : geom.direct_scatterers)
            {
                const Vec3 dir = unit_direction(geom.bs_center, s.position);
                const cdouble gain = path_gain_nlos((u - s.position).norm(), (s.position - geom.bs_center).norm(),
                                                    s.rcs, s.phase, lambda);
                paths.push_back({attenuation * gain, dir, bs_array_response(dir, geom.bs_positions, lambda)});
            }
        }

        if (num_elements_ == 0)
        {
            user_irs_.resize(0, num_users_);
            return;
        }

        const Vec3 normal = geom.irs_normal.normalized();
        irs_base_.resize(num_antennas_, num_elements_);
        arrival_x_.resize(num_antennas_, num_elements_);
        arrival_y_.resize(num_antennas_, num_elements_);
        arrival_z_.resize(num_antennas_, num_elements_);
        for (int m = 0; m < num_antennas_; ++m)
            for (int n = 0; n < num_elements_; ++n)
            {
                const Vec3 out = geom.bs_positions[m] - geom.irs_positions[n]; // RE -> antenna
                const double d = out.norm();
                if (!(d > 0.0))
                    throw std::invalid_argument("ChannelModel: BS antenna coincides with an IRS element");
                const Vec3 d_out = out / d;
                const double reflect = irs_pattern.amplitude_unchecked(normal.dot(d_out));
                irs_base_(m, n) = path_gain_los(d, lambda) * reflect;
                arrival_x_(m, n) = -d_out.x();
                arrival_y_(m, n) = -d_out.y();
                arrival_z_(m, n) = -d_out.z();
            }

        user_irs_ = Eigen::MatrixXcd::Zero(num_elements_, num_users_);
        for (int k = 0; k < num_users_; ++k)
        {
            const Vec3 &u = geom.user_positions[k];
            auto add_path = [&](const cdouble &gain, const Vec3 &d_in) {
                const double amp = irs_pattern.amplitude_unchecked(normal.dot(d_in));
                if (amp == 0.0)
                    return;
                user_irs_.col(k) += gain * amp * irs_array_response(d_in, geom.irs_positions, geom.irs_center, lambda);
            };
            add_path(path_gain_los((u - geom.irs_center).norm(), lambda), unit_direction(geom.irs_center, u));
            for (const auto &s : geom.irs_scatterers)
                add_path(path_gain_nlos((u - s.position).norm(), (s.position - geom.irs_center).norm(), s.rcs,
                                        s.phase, lambda),
                         unit_direction(geom.irs_center, s.position));
        }
    }

    void ChannelModel::check_rotation(const RotationState &rotation) const
    {
        if (static_cast<int>(rotation.size()) != num_antennas_)
            throw std::invalid_argument("ChannelModel: rotation state has " + std::to_string(rotation.size()) +
                                        " antennas, expected " + std::to_string(num_antennas_));
    }

    void ChannelModel::check_phase(const PhaseState &phase) const
    {
        if (phase.size() != num_elements_)
            throw std::invalid_argument("ChannelModel: phase state has " + std::to_string(phase.size()) +
                                        " elements, expected " + std::to_string(num_elements_));
    }

    Eigen::VectorXcd ChannelModel::direct_channel(const RotationState &rotation, int user) const
    {
        check_rotation(rotation);
        Eigen::VectorXcd h = Eigen::VectorXcd::Zero(num_antennas_);
        for (int m = 0; m < num_antennas_; ++m)
        {
            const Vec3 f = rotation.boresight(m);
            cdouble acc = 0.0;
            for (const auto &path : direct_paths_.at(user))
                acc += path.gain * bs_pattern_.amplitude_unchecked(f.dot(path.direction)) * path.response[m];
            h[m] = acc;
        }
        return h;
    }

    Eigen::MatrixXcd ChannelModel::irs_bs_channel(const RotationState &rotation) const
    {
        check_rotation(rotation);
        Eigen::MatrixXcd H(num_antennas_, num_elements_);
        for (int m = 0; m < num_antennas_; ++m)
        {
            const Vec3 f = rotation.boresight(m);
            for (int n = 0; n < num_elements_; ++n)
            {
                const double c = f.x() * arrival_x_(m, n) + f.y() * arrival_y_(m, n) + f.z() * arrival_z_(m, n);
                H(m, n) = irs_base_(m, n) * bs_pattern_.amplitude_unchecked(c);
            }
        }
        return H;
    }

    Eigen::VectorXcd ChannelModel::user_irs_channel(int user) const
    {
        if (user < 0 || user >= num_users_)
            throw std::invalid_argument("ChannelModel::user_irs_channel: user index out of range");
        return user_irs_.col(user);
    }

    ChannelSet ChannelModel::evaluate(const RotationState &rotation) const
    {
        ChannelSet set;
        set.direct.resize(num_antennas_, num_users_);
        for (int k = 0; k < num_users_; ++k)
            set.direct.col(k) = direct_channel(rotation, k);
        set.irs_bs = irs_bs_channel(rotation);
        set.user_irs = user_irs_;
        return set;
    }

    Eigen::MatrixXcd ChannelModel::weighted_user_irs(const PhaseState &phase) const
    {
        return user_irs_.array().colwise() * phase.values().array();
    }

    Eigen::MatrixXcd ChannelModel::effective_channels(const RotationState &rotation, const PhaseState &phase) const
    {
        check_rotation(rotation);
        Eigen::MatrixXcd H(num_antennas_, num_users_);
        Eigen::MatrixXcd weighted;
        Eigen::RowVectorXcd row(num_elements_);
        if (num_elements_ > 0)
        {
            check_phase(phase);
            weighted = weighted_user_irs(phase);
        }
        for (int m = 0; m < num_antennas_; ++m)
        {
            const Vec3 f = rotation.boresight(m);
            for (int k = 0; k < num_users_; ++k)
            {
                cdouble acc = 0.0;
                for (const auto &path : direct_paths_[k])
                    acc += path.gain * bs_pattern_.amplitude_unchecked(f.dot(path.direction)) * path.response[m];
                H(m, k) = acc;
            }
            if (num_elements_ == 0)
                continue;
            for (int n = 0; n < num_elements_; ++n)
            {
                const double c = f.x() * arrival_x_(m, n) + f.y() * arrival_y_(m, n) + f.z() * arrival_z_(m, n);
                row[n] = irs_base_(m, n) * bs_pattern_.amplitude_unchecked(c);
            }
            H.row(m) += row * weighted;
        }
        return H;
    }

    ChannelDerivative ChannelModel::rotation_derivatives(const RotationState &rotation, const PhaseState &phase) const
    {
        check_rotation(rotation);
        ChannelDerivative out{Eigen::MatrixXcd::Zero(num_antennas_, num_users_),
                              Eigen::MatrixXcd::Zero(num_antennas_, num_users_)};
        Eigen::MatrixXcd weighted;
        if (num_elements_ > 0)
        {
            check_phase(phase);
            weighted = weighted_user_irs(phase);
        }
        Eigen::RowVectorXcd row_theta(num_elements_), row_phi(num_elements_);

        for (int m = 0; m < num_antennas_; ++m)
        {
            const double theta = rotation.theta(m), phi = rotation.phi(m);
            const Vec3 f = boresight(theta, phi);
            const auto [jt, jp] = boresight_jacobian(theta, phi);

            for (int k = 0; k < num_users_; ++k)
            {
                cdouble dt = 0.0, dp = 0.0;
                for (const auto &path : direct_paths_[k])
                {
                    const double slope = bs_pattern_.amplitude_slope_unchecked(f.dot(path.direction));
                    if (slope == 0.0)
                        continue;
                    const cdouble w = path.gain * path.response[m] * slope;
                    dt += w * jt.dot(path.direction);
                    dp += w * jp.dot(path.direction);
                }
                out.d_theta(m, k) = dt;
                out.d_phi(m, k) = dp;
            }
            if (num_elements_ == 0)
                continue;

            for (int n = 0; n < num_elements_; ++n)
            {
                const Vec3 d(arrival_x_(m, n), arrival_y_(m, n), arrival_z_(m, n));
                const double slope = bs_pattern_.amplitude_slope_unchecked(f.dot(d));
                const cdouble base = irs_base_(m, n) * slope;
                row_theta[n] = base * jt.dot(d);
                row_phi[n] = base * jp.dot(d);
            }
            out.d_theta.row(m) += row_theta * weighted;
            out.d_phi.row(m) += row_phi * weighted;
        }
        return out;
    }

    std::pair<cdouble, cdouble> ChannelModel::rotation_derivative(const RotationState &rotation,
                                                                  const PhaseState &phase, int user,
                                                                  int antenna) const
    {
        check_rotation(rotation);
        if (user < 0 || user >= num_users_ || antenna < 0 || antenna >= num_antennas_)
            throw std::invalid_argument("ChannelModel::rotation_derivative: index out of range");

        const double theta = rotation.theta(antenna), phi = rotation.phi(antenna);
        cdouble dt = 0.0, dp = 0.0;
        for (const auto &path : direct_paths_[user])
        {
            const auto g = amplitude_rotation_gradient(theta, phi, path.direction, bs_pattern_);
            dt += path.gain * g.d_theta * path.response[antenna];
            dp += path.gain * g.d_phi * path.response[antenna];
        }
        if (num_elements_ > 0)
        {
            check_phase(phase);
            for (int n = 0; n < num_elements_; ++n)
            {
                const Vec3 d = Vec3(arrival_x_(antenna, n), arrival_y_(antenna, n), arrival_z_(antenna, n)).normalized();
                const auto g = amplitude_rotation_gradient(theta, phi, d, bs_pattern_);
                const cdouble tail = irs_base_(antenna, n) * user_irs_(n, user) * phase.values()[n];
                dt += g.d_theta * tail;
                dp += g.d_phi * tail;
            }
        }
        return {dt, dp};
    }

    // ---- free-function views ---------------------------------------------------

    Eigen::VectorXcd direct_channel(const RotationState &rotation, int user, const GeometryRealization &geom,
                                    const ScenarioConfig &cfg)
    {
        return ChannelModel(geom, cfg, false).direct_channel(rotation, user);
    }

    Eigen::VectorXcd user_irs_channel(int user, const GeometryRealization &geom, const ScenarioConfig &cfg)
    {
        return ChannelModel(geom, cfg).user_irs_channel(user);
    }

    Eigen::MatrixXcd irs_bs_channel(const RotationState &rotation, const GeometryRealization &geom,
                                    const ScenarioConfig &cfg)
    {
        return ChannelModel(geom, cfg).irs_bs_channel(rotation);
    }

    std::pair<cdouble, cdouble> channel_rotation_gradient(const RotationState &rotation, const PhaseState &phase,
                                                          int user, int antenna, const GeometryRealization &geom,
                                                          const ScenarioConfig &cfg)
    {
        return ChannelModel(geom, cfg).rotation_derivative(rotation, phase, user, antenna);
    }

    void write_channel_csv(std::ostream &os, const ChannelSet &channels)
    {
        auto emit = [&os](const char *component, int k, int m, int n, const cdouble &z) {
            fmt::print(os, "{},{},{},{},{},{}\n", component, k, m, n, z.real(), z.imag());
        };
        os << "component,k,m,n,re,im\n";
        for (int k = 0; k < channels.direct.cols(); ++k)
            for (int m = 0; m < channels.direct.rows(); ++m)
                emit("direct", k, m, -1, channels.direct(m, k));
        for (int m = 0; m < channels.irs_bs.rows(); ++m)
            for (int n = 0; n < channels.irs_bs.cols(); ++n)
                emit("irs_bs", -1, m, n, channels.irs_bs(m, n));
        for (int k = 0; k < channels.user_irs.cols(); ++k)
            for (int n = 0; n < channels.user_irs.rows(); ++n)
                emit("user_irs", k, -1, n, channels.user_irs(n, k));
        if (!channels.has_irs())
            return;
        for (int k = 0; k < channels.user_irs.cols(); ++k)
        {
            const Eigen::MatrixXcd q = channels.cascaded(k);
            for (int m = 0; m < q.rows(); ++m)
                for (int n = 0; n < q.cols(); ++n)
                    emit("cascaded", k, m, n, q(m, n));
        }
    }
}
