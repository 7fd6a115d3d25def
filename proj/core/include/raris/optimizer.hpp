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

#ifndef RARIS_OPTIMIZER_HPP
#define RARIS_OPTIMIZER_HPP

#include "raris/channel.hpp"
#include "raris/geometry.hpp"
#include "raris/realization.hpp"
#include "raris/scenario.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace raris
{
    // Benchmark schemes. FixedIrs keeps every boresight on +y; RaOnly removes the IRS.
    enum class Scheme
    {
        RaIrs,
        FixedIrs,
        RaOnly
    };

    std::string_view to_string(Scheme scheme);
    // Accepts "ra-irs", "fixed-irs", "ra-only" (underscores also accepted, case-insensitive).
    Scheme parse_scheme(std::string_view name);

    struct PgaConfig
    {
        int max_iters = 100;
        double armijo_c1 = 1e-4;
        double armijo_shrink = 0.5;
        double initial_step = 1.0; // radians: the first trial moves the largest angle by this much
        int max_backtracks = 30;
        double grad_tol = 1e-6; // projected-gradient norm
    };

    struct FpConfig
    {
        int outer_rounds = 20;
        double tol = 1e-4; // bps/Hz surrogate improvement per round
    };

    struct RcgConfig
    {
        int max_iters = 50;
        double grad_tol = 1e-6;
        double armijo_c1 = 1e-4;
        double armijo_shrink = 0.5;
        double initial_step = 1.0; // radians: the first trial moves the largest entry by about this much
        int max_backtracks = 30;
        double positivity_floor = 1e-12; // lower bound on every surrogate log argument
    };

    enum class PhaseInit
    {
        Ones,
        Random
    };

    struct OptimizerConfig
    {
        double outer_tol = 1e-3; // epsilon, bps/Hz
        int outer_max = 50;      // T
        PgaConfig pga{};
        FpConfig fp{};
        RcgConfig rcg{};
        PhaseInit phase_init = PhaseInit::Ones;
        std::uint64_t phase_init_seed = 0;
        // Extra AO passes from seeded random phase starts; the best final sum rate wins.
        int restarts = 0;
    };

    // Throws ConfigError naming the offending field.
    void validate(const OptimizerConfig &cfg);

    struct Beamformer
    {
        Eigen::MatrixXcd W; // M x K, column k is w_k
    };

    // Channel model plus link budget: everything fixed during one solve.
    struct Problem
    {
        ChannelModel model;
        Eigen::VectorXd powers; // W, per user
        double noise = 0.0;     // W

        static Problem from_scenario(const ScenarioConfig &cfg, const GeometryRealization &geom,
                                     bool include_irs = true);
    };

    // ---- rate evaluation ----------------------------------------------------

    // P_k |w_k^H h_k|^2 / (sum_{j != k} P_j |w_k^H h_j|^2 + noise |w_k|^2). H is M x K.
    // Throws std::invalid_argument for a zero w_k or inconsistent dimensions.
    double sinr(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise,
                int user);
    Eigen::VectorXd sinrs(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers,
                          double noise);
    double sum_rate(const Beamformer &bf, const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise);
    double sum_rate(const Beamformer &bf, const RotationState &rotation, const PhaseState &phase,
                    const Problem &problem);

    // M x 2 matrix of (dR/dtheta_m, dR/dphi_m) at fixed W and v.
    Eigen::MatrixX2d rate_rotation_gradient(const Beamformer &bf, const RotationState &rotation,
                                            const PhaseState &phase, const Problem &problem);

    // ---- receive beamforming ------------------------------------------------

    // w_k = noise (sum_j P_j h_j h_j^H + noise I)^-1 h_k; the positive factor leaves every SINR unchanged.
    Beamformer mmse_beamformer(const Eigen::MatrixXcd &H, const Eigen::VectorXd &powers, double noise);
    Beamformer mmse_beamformer(const RotationState &rotation, const PhaseState &phase, const Problem &problem);

    // ---- rotation block -----------------------------------------------------

    struct PgaStats
    {
        int iterations = 0;
        int accepted_steps = 0;
        int backtracks = 0;
        double projected_gradient_norm = 0.0;
    };

    /// Projected gradient ascent on the sum rate over the deflection angles with W and v
    /// held fixed. theta is clamped to [0, theta_max], phi wrapped modulo 2 pi; every
    /// accepted step satisfies the Armijo sufficient-increase condition measured along
    /// the projected displacement.
    RotationState optimize_rotations(const Beamformer &bf, const RotationState &init, const PhaseState &phase,
                                     const Problem &problem, const PgaConfig &cfg, PgaStats *stats = nullptr,
                                     const std::function<void(const RotationState &)> &on_iterate = {});

    // Norm of P_C(theta + g) - theta with phi displacements taken unwrapped.
    double projected_gradient_norm(const RotationState &rotation, const Eigen::MatrixX2d &gradient);

    // ---- phase block --------------------------------------------------------

    struct FPAuxiliaries
    {
        Eigen::VectorXcd beta; // K
    };

    /// Phase subproblem with W and the rotation fixed. Every inner product is affine in v:
    /// w_k^H h_j(v) = e_kj + c_kj^H v, which makes the rate, the quadratic-transform
    /// surrogate and its gradient O(K^2 N).
    ///
    /// The surrogate per user is log2(u_k) with
    ///   u_k = 1 + 2 Re{beta_k a_k(v)} - |beta_k|^2 I_k(v),   a_k = sqrt(P_k) w_k^H h_k(v),
    /// which equals log2(1 + gamma_k) at beta_k = conj(a_k) / I_k and lies below it elsewhere.
    class PhaseSubproblem
    {
    public:
        PhaseSubproblem(const Beamformer &bf, const ChannelSet &channels, const Eigen::VectorXd &powers,
                        double noise);

        int num_users() const { return static_cast<int>(powers_.size()); }
        Eigen::Index num_elements() const { return num_elements_; }

        // a_k(v) and I_k(v) for every user.
        void signal_and_interference(const Eigen::VectorXcd &v, Eigen::VectorXcd &a, Eigen::VectorXd &I) const;
        double sum_rate(const Eigen::VectorXcd &v) const;
        FPAuxiliaries optimal_auxiliaries(const Eigen::VectorXcd &v) const;

        // Log arguments u_k; false when any falls to or below `floor`.
        bool surrogate_arguments(const Eigen::VectorXcd &v, const FPAuxiliaries &aux, Eigen::VectorXd &u,
                                 double floor = 0.0) const;
        // Sum of log2(u_k); -inf when some u_k <= floor.
        double surrogate(const Eigen::VectorXcd &v, const FPAuxiliaries &aux, double floor = 0.0) const;
        // Euclidean gradient packaged as df/dRe(v_n) + j df/dIm(v_n).
        Eigen::VectorXcd surrogate_gradient(const Eigen::VectorXcd &v, const FPAuxiliaries &aux) const;

    private:
        void inner_products(const Eigen::VectorXcd &v, Eigen::MatrixXcd &s) const; // s(k, j) = w_k^H h_j(v)

        Eigen::Index num_elements_ = 0;
        Eigen::VectorXd powers_;
        Eigen::VectorXd noise_terms_; // noise |w_k|^2
        Eigen::MatrixXcd e_;          // K x K
        std::vector<Eigen::MatrixXcd> c_; // per k: N x K, column j is c_kj
    };

    // beta_k = conj(a_k) / I_k at the current (W, rotation, v).
    FPAuxiliaries fp_beta_update(const Beamformer &bf, const RotationState &rotation, const PhaseState &phase,
                                 const Problem &problem);

    // Tangent projection on the complex circle manifold: g - Re{g o conj(v)} o v.
    Eigen::VectorXcd riemannian_gradient(const Eigen::VectorXcd &euclidean, const Eigen::VectorXcd &v);

    struct RcgStats
    {
        int iterations = 0;
        int backtracks = 0;
        double gradient_norm = 0.0;
    };

    /// Riemannian conjugate gradient (Polak-Ribiere+, projection transport, normalization
    /// retraction, Armijo backtracking) maximizing the surrogate for fixed auxiliaries.
    /// Throws std::invalid_argument if the surrogate is undefined at `init`.
    PhaseState rcg_inner(const PhaseState &init, const FPAuxiliaries &aux, const PhaseSubproblem &sub,
                         const RcgConfig &cfg, RcgStats *stats = nullptr,
                         const std::function<void(const PhaseState &)> &on_iterate = {});

    struct FpStats
    {
        int rounds = 0;
        int rcg_iterations = 0;
    };

    struct PhaseObserver
    {
        std::function<void(const PhaseState &)> on_iterate;
        // Surrogate value and true sum rate right after each auxiliary update.
        std::function<void(double surrogate, double sum_rate)> on_beta_update;
    };

    // Alternates auxiliary updates and RCG until the surrogate gain of a round drops below
    // fp.tol or fp.outer_rounds is reached.
    PhaseState optimize_phases(const Beamformer &bf, const RotationState &rotation, const PhaseState &init,
                               const Problem &problem, const OptimizerConfig &cfg, FpStats *stats = nullptr,
                               const PhaseObserver *observer = nullptr);

    // ---- alternating optimization -------------------------------------------

    struct BlockDiagnostics
    {
        int pga_iterations = 0;
        int pga_steps_accepted = 0;
        int rcg_iterations = 0;
        int fp_rounds = 0;
    };

    struct SolveReport
    {
        Scheme scheme = Scheme::RaIrs;
        double initial_sum_rate = 0.0;
        std::vector<double> sum_rate_trajectory; // one entry per outer iteration
        Eigen::VectorXd per_user_sinr;
        int iterations_used = 0;
        bool converged = false;
        double wall_time = 0.0; // seconds
        BlockDiagnostics diagnostics{};

        double final_sum_rate() const
        {
            return sum_rate_trajectory.empty() ? initial_sum_rate : sum_rate_trajectory.back();
        }
    };

    struct SolveResult
    {
        SolveReport report;
        RotationState rotation;
        PhaseState phase;
        Beamformer beamformer;
    };

    struct SolveObserver
    {
        std::function<void(const RotationState &)> on_rotation;
        std::function<void(const PhaseState &)> on_phase;
        std::function<void(double surrogate, double sum_rate)> on_beta_update;
    };

    // Boresights toward the IRS center for RaIrs (theta clamped), +y for the other schemes.
    RotationState initial_rotation(const GeometryRealization &geom, const ScenarioConfig &cfg, Scheme scheme);
    PhaseState initial_phase(Eigen::Index n, const OptimizerConfig &cfg, std::uint64_t salt = 0);

    /// Alternating optimization: rotation block (PGA), MMSE beamformer, phase block
    /// (FP + RCG), stopping when successive sum rates differ by less than outer_tol.
    SolveResult ao_solve(const Problem &problem, const RotationState &init_rotation, const PhaseState &init_phase,
                         const OptimizerConfig &cfg, Scheme scheme, const SolveObserver *observer = nullptr);

    // Samples the realization from `scenario.seed` and runs ao_solve from the default start.
    SolveResult ao_solve(const ScenarioConfig &scenario, const OptimizerConfig &cfg, Scheme scheme,
                         const SolveObserver *observer = nullptr);
}

#endif
