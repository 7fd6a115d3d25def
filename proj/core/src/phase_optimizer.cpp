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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace raris
{
    PhaseSubproblem::PhaseSubproblem(const Beamformer &bf, const ChannelSet &channels, const Eigen::VectorXd &powers,
                                     double noise)
        : num_elements_(channels.irs_bs.cols()), powers_(powers)
    {
        const Eigen::Index K = channels.direct.cols();
        if (bf.W.cols() != K || bf.W.rows() != channels.direct.rows() || powers.size() != K)
            throw std::invalid_argument("PhaseSubproblem: beamformer, channel and power dimensions disagree");

        noise_terms_.resize(K);
        for (Eigen::Index k = 0; k < K; ++k)
            noise_terms_[k] = noise * bf.W.col(k).squaredNorm();
        e_ = bf.W.adjoint() * channels.direct;

        // c_kj = Q_j^H w_k = conj(h_{r,j}) o (H_RB^H w_k)
        c_.resize(K);
        const Eigen::MatrixXcd t = channels.irs_bs.adjoint() * bf.W; // N x K
        for (Eigen::Index k = 0; k < K; ++k)
            c_[k] = channels.user_irs.conjugate().array().colwise() * t.col(k).array();
    }

    void PhaseSubproblem::inner_products(const Eigen::VectorXcd &v, Eigen::MatrixXcd &s) const
    {
        if (v.size() != num_elements_)
            throw std::invalid_argument("PhaseSubproblem: phase vector length does not match IRS size");
        s = e_;
        if (num_elements_ == 0)
            return;
        for (int k = 0; k < num_users(); ++k)
            s.row(k) += (c_[k].adjoint() * v).transpose();
    }

    void PhaseSubproblem::signal_and_interference(const Eigen::VectorXcd &v, Eigen::VectorXcd &a,
                                                  Eigen::VectorXd &I) const
    {
        Eigen::MatrixXcd s;
        inner_products(v, s);
        const int K = num_users();
        a.resize(K);
        I.resize(K);
        for (int k = 0; k < K; ++k)
        {
            a[k] = std::sqrt(powers_[k]) * s(k, k);
            double acc = noise_terms_[k];
            for (int j = 0; j < K; ++j)
                if (j != k)
                    acc += powers_[j] * std::norm(s(k, j));
            I[k] = acc;
        }
    }

    double PhaseSubproblem::sum_rate(const Eigen::VectorXcd &v) const
    {
        Eigen::VectorXcd a;
        Eigen::VectorXd I;
        signal_and_interference(v, a, I);
        double r = 0.0;
        for (int k = 0; k < num_users(); ++k)
            r += std::log2(1.0 + std::norm(a[k]) / I[k]);
        return r;
    }

    FPAuxiliaries PhaseSubproblem::optimal_auxiliaries(const Eigen::VectorXcd &v) const
    {
        Eigen::VectorXcd a;
        Eigen::VectorXd I;
        signal_and_interference(v, a, I);
        FPAuxiliaries aux;
        aux.beta.resize(num_users());
        for (int k = 0; k < num_users(); ++k)
            aux.beta[k] = std::conj(a[k]) / I[k];
        return aux;
    }

    bool PhaseSubproblem::surrogate_arguments(const Eigen::VectorXcd &v, const FPAuxiliaries &aux,
                                              Eigen::VectorXd &u, double floor) const
    {
        Eigen::VectorXcd a;
        Eigen::VectorXd I;
        signal_and_interference(v, a, I);
        u.resize(num_users());
        bool ok = true;
        for (int k = 0; k < num_users(); ++k)
        {
            const cdouble b = aux.beta[k];
            u[k] = 1.0 + 2.0 * std::real(b * a[k]) - std::norm(b) * I[k];
            ok = ok && u[k] > floor;
        }
        return ok;
    }

    double PhaseSubproblem::surrogate(const Eigen::VectorXcd &v, const FPAuxiliaries &aux, double floor) const
    {
        Eigen::VectorXd u;
        if (!surrogate_arguments(v, aux, u, floor))
            return -std::numeric_limits<double>::infinity();
        double acc = 0.0;
        for (Eigen::Index k = 0; k < u.size(); ++k)
            acc += std::log2(u[k]);
        return acc;
    }

    Eigen::VectorXcd PhaseSubproblem::surrogate_gradient(const Eigen::VectorXcd &v, const FPAuxiliaries &aux) const
    {
        Eigen::MatrixXcd s;
        inner_products(v, s);
        const int K = num_users();
        Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(num_elements_);
        Eigen::VectorXcd coef(K);
        for (int k = 0; k < K; ++k)
        {
            const cdouble b = aux.beta[k];
            const double sp = std::sqrt(powers_[k]);
            double u = 1.0 + 2.0 * std::real(b * sp * s(k, k)) - std::norm(b) * noise_terms_[k];
            for (int j = 0; j < K; ++j)
                if (j != k)
                    u -= std::norm(b) * powers_[j] * std::norm(s(k, j));

            // du_k / dconj(v) = conj(b) sqrt(P_k) c_kk - |b|^2 sum_{j != k} P_j s_kj c_kj
            for (int j = 0; j < K; ++j)
                coef[j] = (j == k) ? std::conj(b) * sp : -std::norm(b) * powers_[j] * s(k, j);
            grad += (2.0 / (std::numbers::ln2 * u)) * (c_[k] * coef);
        }
        return grad;
    }

    FPAuxiliaries fp_beta_update(const Beamformer &bf, const RotationState &rotation, const PhaseState &phase,
                                 const Problem &problem)
    {
        const PhaseSubproblem sub(bf, problem.model.evaluate(rotation), problem.powers, problem.noise);
        return sub.optimal_auxiliaries(phase.values());
    }

    Eigen::VectorXcd riemannian_gradient(const Eigen::VectorXcd &euclidean, const Eigen::VectorXcd &v)
    {
        const Eigen::ArrayXd radial = (euclidean.array() * v.array().conjugate()).real();
        return (euclidean.array() - radial.cast<cdouble>() * v.array()).matrix();
    }

    namespace
    {
        double real_inner(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
        {
            return (a.array().conjugate() * b.array()).real().sum();
        }
    }

    PhaseState rcg_inner(const PhaseState &init, const FPAuxiliaries &aux, const PhaseSubproblem &sub,
                         const RcgConfig &cfg, RcgStats *stats,
                         const std::function<void(const PhaseState &)> &on_iterate)
    {
        RcgStats local;
        PhaseState current = init;
        double value = sub.surrogate(current.values(), aux, cfg.positivity_floor);
        if (!std::isfinite(value))
            throw std::invalid_argument("rcg_inner: surrogate argument is not positive at the initial point");

        Eigen::VectorXcd grad = riemannian_gradient(sub.surrogate_gradient(current.values(), aux), current.values());
        Eigen::VectorXcd dir = grad;
        for (int it = 0; it < cfg.max_iters; ++it)
        {
            local.gradient_norm = grad.norm();
            if (local.gradient_norm < cfg.grad_tol)
                break;
            double slope = real_inner(grad, dir);
            if (!(slope > 0.0))
            {
                dir = grad;
                slope = local.gradient_norm * local.gradient_norm;
            }
            ++local.iterations;

            double step = cfg.initial_step / dir.cwiseAbs().maxCoeff();
            bool accepted = false;
            PhaseState trial;
            double trial_value = 0.0;
            for (int b = 0; b < cfg.max_backtracks; ++b, step *= cfg.armijo_shrink)
            {
                trial = PhaseState::retract(current.values() + step * dir);
                trial_value = sub.surrogate(trial.values(), aux, cfg.positivity_floor);
                if (trial_value >= value + cfg.armijo_c1 * step * slope)
                {
                    accepted = true;
                    break;
                }
                ++local.backtracks;
            }
            if (!accepted)
                break;

            const Eigen::VectorXcd next_grad =
                riemannian_gradient(sub.surrogate_gradient(trial.values(), aux), trial.values());
            // Vector transport by tangent projection at the new point.
            const Eigen::VectorXcd moved_dir = riemannian_gradient(dir, trial.values());
            const Eigen::VectorXcd moved_grad = riemannian_gradient(grad, trial.values());
            const double pr = real_inner(next_grad, next_grad - moved_grad) / (local.gradient_norm * local.gradient_norm);
            dir = next_grad + std::max(pr, 0.0) * moved_dir;

            current = std::move(trial);
            value = trial_value;
            grad = next_grad;
            if (on_iterate)
                on_iterate(current);
        }

        if (stats)
        {
            stats->iterations += local.iterations;
            stats->backtracks += local.backtracks;
            stats->gradient_norm = local.gradient_norm;
        }
        return current;
    }

    PhaseState optimize_phases(const Beamformer &bf, const RotationState &rotation, const PhaseState &init,
                               const Problem &problem, const OptimizerConfig &cfg, FpStats *stats,
                               const PhaseObserver *observer)
    {
        if (init.size() == 0)
            return init;
        const PhaseSubproblem sub(bf, problem.model.evaluate(rotation), problem.powers, problem.noise);

        FpStats local;
        RcgStats rcg_stats;
        PhaseState current = init;
        const std::function<void(const PhaseState &)> no_observer;
        for (int round = 0; round < cfg.fp.outer_rounds; ++round)
        {
            const FPAuxiliaries aux = sub.optimal_auxiliaries(current.values());
            const double before = sub.surrogate(current.values(), aux);
            if (observer && observer->on_beta_update)
                observer->on_beta_update(before, sub.sum_rate(current.values()));

            current = rcg_inner(current, aux, sub, cfg.rcg, &rcg_stats, observer ? observer->on_iterate : no_observer);
            ++local.rounds;
            const double after = sub.surrogate(current.values(), aux);
            if (after - before < cfg.fp.tol)
                break;
        }
        local.rcg_iterations = rcg_stats.iterations;

        if (stats)
        {
            stats->rounds += local.rounds;
            stats->rcg_iterations += local.rcg_iterations;
        }
        return current;
    }
}
