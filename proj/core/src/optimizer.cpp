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

#include "raris/optimizer.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace raris
{
    std::string_view to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::RaIrs:
            return "ra-irs";
        case Scheme::FixedIrs:
            return "fixed-irs";
        case Scheme::RaOnly:
            return "ra-only";
        }
        return "unknown";
    }

    Scheme parse_scheme(std::string_view name)
    {
        std::string key(name);
        for (auto &ch : key)
            ch = ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (key == "ra-irs")
            return Scheme::RaIrs;
        if (key == "fixed-irs")
            return Scheme::FixedIrs;
        if (key == "ra-only")
            return Scheme::RaOnly;
        throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected ra-irs, fixed-irs or ra-only)");
    }

    void validate(const OptimizerConfig &c)
    {
        auto require = [](bool ok, const char *field, const char *message) {
            if (!ok)
                throw ConfigError(field, message);
        };
        require(c.outer_tol > 0.0, "optimizer.outer_tol_bpshz", "must be positive");
        require(c.outer_max > 0, "optimizer.outer_max_iters", "must be positive");
        require(c.pga.max_iters > 0, "optimizer.pga.max_iters", "must be positive");
        require(c.pga.armijo_c1 > 0.0 && c.pga.armijo_c1 < 1.0, "optimizer.pga.armijo_c1", "must lie in (0, 1)");
        require(c.pga.armijo_shrink > 0.0 && c.pga.armijo_shrink < 1.0, "optimizer.pga.armijo_shrink",
                "must lie in (0, 1)");
        require(c.pga.initial_step > 0.0, "optimizer.pga.initial_step_rad", "must be positive");
        require(c.pga.max_backtracks > 0, "optimizer.pga.max_backtracks", "must be positive");
        require(c.pga.grad_tol > 0.0, "optimizer.pga.grad_tol", "must be positive");
        require(c.fp.outer_rounds > 0, "optimizer.fp.outer_rounds", "must be positive");
        require(c.fp.tol > 0.0, "optimizer.fp.tol_bpshz", "must be positive");
        require(c.rcg.max_iters > 0, "optimizer.rcg.max_iters", "must be positive");
        require(c.rcg.grad_tol > 0.0, "optimizer.rcg.grad_tol", "must be positive");
        require(c.rcg.armijo_c1 > 0.0 && c.rcg.armijo_c1 < 1.0, "optimizer.rcg.armijo_c1", "must lie in (0, 1)");
        require(c.rcg.armijo_shrink > 0.0 && c.rcg.armijo_shrink < 1.0, "optimizer.rcg.armijo_shrink",
                "must lie in (0, 1)");
        require(c.rcg.initial_step > 0.0, "optimizer.rcg.initial_step_rad", "must be positive");
        require(c.rcg.max_backtracks > 0, "optimizer.rcg.max_backtracks", "must be positive");
        require(c.rcg.positivity_floor > 0.0, "optimizer.rcg.positivity_floor", "must be positive");
        require(c.restarts >= 0, "optimizer.restarts", "must be non-negative");
    }

    Problem Problem::from_scenario(const ScenarioConfig &cfg, const GeometryRealization &geom, bool include_irs)
    {
        return Problem{ChannelModel(geom, cfg, include_irs),
                       Eigen::VectorXd::Constant(static_cast<Eigen::Index>(geom.user_positions.size()),
                                                 cfg.tx_power_w()),
                       cfg.noise_w()};
    }

    // ---- rate evaluation ----------------------------------------------------

    namespace
    {
        void check_dimensions(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers)
        {
            if (bf.W.rows() != H.rows() || bf.W.cols() != H.cols() || powers.size() != H.cols())
                throw std::invalid_argument("sinr: beamformer, channel and power dimensions disagree");
        }

        // gamma_k from the K x K cross-gain matrix z(k, j) = w_k^H h_j.
        double sinr_from_cross(const Eigen::MatrixXcd &z, const Eigen::VectorXd &powers, double noise_term, int k)
        {
            double interference = noise_term;
            for (Eigen::Index j = 0; j < z.cols(); ++j)
                if (j != k)
                    interference += powers[j] * std::norm(z(k, j));
            return powers[k] * std::norm(z(k, k)) / interference;
        }
    }

    double sinr(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise,
                int user)
    {
        check_dimensions(bf, H, powers);
        if (user < 0 || user >= H.cols())
            throw std::invalid_argument("sinr: user index out of range");
        const auto w = bf.W.col(user);
        const double wn = w.squaredNorm();
        if (!(wn > 0.0))
            throw std::invalid_argument("sinr: receive beamformer for user " + std::to_string(user) + " is zero");
        const Eigen::RowVectorXcd z = w.adjoint() * H;
        double interference = noise * wn;
        for (Eigen::Index j = 0; j < H.cols(); ++j)
            if (j != user)
                interference += powers[j] * std::norm(z[j]);
        return powers[user] * std::norm(z[user]) / interference;
    }

    Eigen::VectorXd sinrs(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers,
                          double noise)
    {
        check_dimensions(bf, H, powers);
        const Eigen::MatrixXcd z = bf.W.adjoint() * H;
        Eigen::VectorXd out(H.cols());
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            const double wn = bf.W.col(k).squaredNorm();
            if (!(wn > 0.0))
                throw std::invalid_argument("sinr: receive beamformer for user " + std::to_string(k) + " is zero");
            out[k] = sinr_from_cross(z, powers, noise * wn, static_cast<int>(k));
        }
        return out;
    }

    double sum_rate(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise)
    {
        const Eigen::VectorXd g = sinrs(bf, H, powers, noise);
        double r = 0.0;
        for (Eigen::Index k = 0; k < g.size(); ++k)
            r += std::log2(1.0 + g[k]);
        return r;
    }

    double sum_rate(const Beamformer &bf, const RotationState &rotation, const PhaseState &phase,
                    const Problem &problem)
    {
        return sum_rate(bf, problem.model.effective_channels(rotation, phase), problem.powers, problem.noise);
    }

    Eigen::MatrixX2d rate_rotation_gradient(const Beamformer &bf, const RotationState &rotation,
                                            const PhaseState &phase, const Problem &problem)
    {
        const Eigen::MatrixXcd H = problem.model.effective_channels(rotation, phase);
        check_dimensions(bf, H, problem.powers);
        const ChannelDerivative dh = problem.model.rotation_derivatives(rotation, phase);
        const Eigen::Index M = H.rows(), K = H.cols();
        const Eigen::VectorXd &P = problem.powers;

        // z(k, j) = w_k^H h_j; numerator N_k, denominator D_k of gamma_k.
        const Eigen::MatrixXcd z = bf.W.adjoint() * H;
        Eigen::VectorXd num(K), den(K), weight(K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            num[k] = P[k] * std::norm(z(k, k));
            den[k] = problem.noise * bf.W.col(k).squaredNorm();
            for (Eigen::Index j = 0; j < K; ++j)
                if (j != k)
                    den[k] += P[j] * std::norm(z(k, j));
            // d log2(1 + N/D) = (D dN - N dD) / (ln2 D (D + N))
            weight[k] = 1.0 / (std::numbers::ln2 * den[k] * (den[k] + num[k]));
        }

        Eigen::MatrixX2d grad = Eigen::MatrixX2d::Zero(M, 2);
        for (Eigen::Index m = 0; m < M; ++m)
        {
            for (int axis = 0; axis < 2; ++axis)
            {
                const Eigen::MatrixXcd &d = axis == 0 ? dh.d_theta : dh.d_phi;
                double acc = 0.0;
                for (Eigen::Index k = 0; k < K; ++k)
                {
                    // d|z_kj|^2 = 2 Re{conj(z_kj) conj(W_mk) dh_j[m]}
                    const cdouble wk = std::conj(bf.W(m, k));
                    double d_num = 0.0, d_den = 0.0;
                    for (Eigen::Index j = 0; j < K; ++j)
                    {
                        const double t = 2.0 * std::real(std::conj(z(k, j)) * wk * d(m, j));
                        if (j == k)
                            d_num = P[j] * t;
                        else
                            d_den += P[j] * t;
                    }
                    acc += weight[k] * (den[k] * d_num - num[k] * d_den);
                }
                grad(m, axis) = acc;
            }
        }
        return grad;
    }

    // ---- receive beamforming ------------------------------------------------

    Beamformer mmse_beamformer(const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise)
    {
        if (powers.size() != H.cols())
            throw std::invalid_argument("mmse_beamformer: power vector length does not match user count");
        if (!(noise > 0.0))
            throw std::invalid_argument("mmse_beamformer: noise power must be positive");
        // Solve with the covariance scaled by 1/noise; the scaling does not change any SINR.
        const Eigen::MatrixXcd Hs = H * (powers.array() / noise).sqrt().matrix().asDiagonal();
        Eigen::MatrixXcd A = Hs * Hs.adjoint();
        A.diagonal().array() += 1.0;
        return Beamformer{A.llt().solve(H)};
    }

    Beamformer mmse_beamformer(const RotationState &rotation, const PhaseState &phase, const Problem &problem)
    {
        return mmse_beamformer(problem.model.effective_channels(rotation, phase), problem.powers, problem.noise);
    }
}
