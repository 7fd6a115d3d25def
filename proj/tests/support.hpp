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

// Test-side helpers and reference implementations. Everything here is written from the
// model definitions directly and shares no code paths with the library beyond its types.
#ifndef RARIS_TESTS_SUPPORT_HPP
#define RARIS_TESTS_SUPPORT_HPP

#include "raris/optimizer.hpp"
#include "raris/realization.hpp"
#include "raris/scenario.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace raris::test
{
    using cd = std::complex<double>;
    inline constexpr double kPi = std::numbers::pi;

    inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

    // Small scenario used by the brute-force and desk-scale checks.
    inline ScenarioConfig desk_scenario(int mx, int mz, int ny, int nz, int users, std::uint64_t seed)
    {
        ScenarioConfig sc;
        sc.bs_count_x = mx;
        sc.bs_count_z = mz;
        sc.irs_count_y = ny;
        sc.irs_count_z = nz;
        sc.num_users = users;
        sc.seed = seed;
        return sc;
    }

    // Sum rate from the SINR definition with explicit loops.
    inline double reference_sum_rate(const Eigen::MatrixXcd &W, const Eigen::MatrixXcd &H,
                                     const Eigen::VectorXd &powers, double noise)
    {
        double total = 0.0;
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            double signal = 0.0, interference = 0.0, wnorm = 0.0;
            for (Eigen::Index j = 0; j < H.cols(); ++j)
            {
                cd ip = 0.0;
                for (Eigen::Index m = 0; m < H.rows(); ++m)
                    ip += std::conj(W(m, k)) * H(m, j);
                if (j == k)
                    signal = powers[j] * std::norm(ip);
                else
                    interference += powers[j] * std::norm(ip);
            }
            for (Eigen::Index m = 0; m < H.rows(); ++m)
                wnorm += std::norm(W(m, k));
            total += std::log2(1.0 + signal / (interference + noise * wnorm));
        }
        return total;
    }

    // MMSE combiner via a dense LU solve on the unscaled covariance.
    inline Eigen::MatrixXcd reference_mmse(const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise)
    {
        const Eigen::Index M = H.rows();
        Eigen::MatrixXcd C = noise * Eigen::MatrixXcd::Identity(M, M);
        for (Eigen::Index j = 0; j < H.cols(); ++j)
            C += powers[j] * H.col(j) * H.col(j).adjoint();
        return C.fullPivLu().solve(H);
    }

    inline Eigen::MatrixXcd zero_forcing(const Eigen::MatrixXcd &H)
    {
        // Columns of H (H^H H)^-1 null every other user.
        return H * (H.adjoint() * H).inverse();
    }

    inline Eigen::MatrixXcd random_channels(std::mt19937_64 &rng, Eigen::Index M, Eigen::Index K, double scale)
    {
        std::normal_distribution<double> g(0.0, scale);
        Eigen::MatrixXcd H(M, K);
        for (Eigen::Index i = 0; i < M; ++i)
            for (Eigen::Index j = 0; j < K; ++j)
                H(i, j) = cd(g(rng), g(rng));
        return H;
    }

    inline RotationState random_interior_rotation(std::mt19937_64 &rng, std::size_t M, double theta_max,
                                                  double margin = 1e-2)
    {
        std::uniform_real_distribution<double> th(margin, theta_max - margin), ph(0.0, 2.0 * kPi);
        RotationState r(M, theta_max);
        for (std::size_t m = 0; m < M; ++m)
        {
            const double t = th(rng);
            r.set(m, t, ph(rng));
        }
        return r;
    }

    inline PhaseState random_phase(std::mt19937_64 &rng, Eigen::Index N)
    {
        std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
        std::vector<double> p(static_cast<std::size_t>(N));
        for (auto &x : p)
            x = ph(rng);
        return PhaseState::from_phases(p);
    }

    // Best sum rate over every v with entries on a `levels`-point phase grid, MMSE per candidate.
    inline double brute_force_phase_grid(const Eigen::MatrixXcd &direct, const std::vector<Eigen::MatrixXcd> &cascaded,
                                         const Eigen::VectorXd &powers, double noise, int levels)
    {
        const Eigen::Index N = cascaded.front().cols();
        const Eigen::Index K = direct.cols();
        std::vector<cd> alphabet(static_cast<std::size_t>(levels));
        for (int l = 0; l < levels; ++l)
            alphabet[static_cast<std::size_t>(l)] = std::polar(1.0, 2.0 * kPi * l / levels);

        std::vector<int> digits(static_cast<std::size_t>(N), 0);
        Eigen::VectorXcd v(N);
        double best = -1.0;
        for (;;)
        {
            for (Eigen::Index n = 0; n < N; ++n)
                v[n] = alphabet[static_cast<std::size_t>(digits[static_cast<std::size_t>(n)])];
            Eigen::MatrixXcd H = direct;
            for (Eigen::Index k = 0; k < K; ++k)
                H.col(k) += cascaded[static_cast<std::size_t>(k)] * v;
            const Eigen::MatrixXcd W = reference_mmse(H, powers, noise);
            best = std::max(best, reference_sum_rate(W, H, powers, noise));

            Eigen::Index i = 0;
            while (i < N && ++digits[static_cast<std::size_t>(i)] == levels)
                digits[static_cast<std::size_t>(i++)] = 0;
            if (i == N)
                break;
        }
        return best;
    }
}

#endif
