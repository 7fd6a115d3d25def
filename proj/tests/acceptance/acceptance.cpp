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

// Acceptance gate: runs every release criterion and prints one PASS/FAIL line each.
#include "cli.hpp"
#include "support.hpp"

#include "raris/config_io.hpp"
#include "raris/experiment.hpp"
#include "raris/gradient_check.hpp"
#include "raris/optimizer.hpp"
#include "raris/radiation.hpp"

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

using namespace raris;
namespace fs = std::filesystem;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    void report(int id, const char *name, const Verdict &v)
    {
        fmt::print("criterion {:2d} {:<24} {}  {}\n", id, name, v.pass ? "PASS" : "FAIL", v.detail);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }

    template <typename F>
    Verdict guarded(F &&f)
    {
        try
        {
            return f();
        }
        catch (const std::exception &e)
        {
            return {false, std::string("exception: ") + e.what()};
        }
    }

    const fs::path kConfigDir = fs::path(RARIS_SOURCE_DIR) / "configs";

    int cli(const std::vector<std::string> &args, std::string *out_text = nullptr)
    {
        std::vector<std::string> argv{"raris"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run(argv, out, err);
        if (out_text)
            *out_text = out.str();
        if (code != 0)
            fmt::print(stderr, "raris {} exited {}: {}\n", args.front(), code, err.str());
        return code;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // ---- 1 ------------------------------------------------------------------
    Verdict gradient_fidelity()
    {
        const RunConfig cfg = load_run_config(kConfigDir / "default.yaml");
        GradientCheckConfig gc = cfg.check_grad;
        gc.num_states = 100;
        gc.seed = cfg.scenario.seed;
        const auto t0 = Clock::now();
        const GradientCheckResult r = check_gradients(cfg.scenario, gc);
        const double secs = seconds_since(t0);
        const int code = cli({"check-grad", "-c", (kConfigDir / "default.yaml").string()});
        const bool ok = r.states_checked == 100 && r.worst_rotation_error < 1e-4 && r.worst_phase_error < 1e-5 &&
                        secs < 60.0 && code == 0;
        return {ok, fmt::format("states {}, rotation {:.2e} < 1e-4, phase {:.2e} < 1e-5, {:.2f} s < 60 s, cli exit {}",
                                r.states_checked, r.worst_rotation_error, r.worst_phase_error, secs, code)};
    }

    // ---- 2, 3, 4 ------------------------------------------------------------
    struct AoStats
    {
        bool monotone = true;
        bool converged = true;
        int max_iterations = 0;
        double max_seconds = 0.0;
        double worst_drop = 0.0;
        double worst_modulus = 0.0;
        double theta_min = 1e300, theta_max = -1e300;
        double worst_fp_gap = 0.0;
        long beta_updates = 0;
    };

    AoStats run_ao_seeds()
    {
        AoStats st;
        const RunConfig cfg = load_run_config(kConfigDir / "default.yaml");
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            ScenarioConfig sc = cfg.scenario;
            sc.seed = seed;
            SolveObserver obs;
            obs.on_rotation = [&](const RotationState &r) {
                for (std::size_t m = 0; m < r.size(); ++m)
                {
                    st.theta_min = std::min(st.theta_min, r.theta(m));
                    st.theta_max = std::max(st.theta_max, r.theta(m));
                }
            };
            obs.on_phase = [&](const PhaseState &v) { st.worst_modulus = std::max(st.worst_modulus, v.max_modulus_error()); };
            obs.on_beta_update = [&](double surrogate, double rate) {
                st.worst_fp_gap = std::max(st.worst_fp_gap, std::abs(surrogate - rate));
                ++st.beta_updates;
            };
            const auto t0 = Clock::now();
            const SolveResult res = ao_solve(sc, cfg.optimizer, Scheme::RaIrs, &obs);
            st.max_seconds = std::max(st.max_seconds, seconds_since(t0));
            // The returned state is observed too.
            obs.on_rotation(res.rotation);
            obs.on_phase(res.phase);

            double prev = res.report.initial_sum_rate;
            for (double r : res.report.sum_rate_trajectory)
            {
                st.worst_drop = std::max(st.worst_drop, prev - r);
                prev = r;
            }
            const auto &traj = res.report.sum_rate_trajectory;
            const bool settled = traj.size() >= 2 && std::abs(traj.back() - traj[traj.size() - 2]) < 1e-3;
            st.converged = st.converged && res.report.converged && settled && res.report.iterations_used <= 50;
            st.max_iterations = std::max(st.max_iterations, res.report.iterations_used);
        }
        st.monotone = st.worst_drop <= 1e-9;
        return st;
    }

    // ---- 5 ------------------------------------------------------------------
    Verdict mmse_dominance()
    {
        ScenarioConfig sc;
        std::mt19937_64 rng(20240605);
        std::normal_distribution<double> g;
        int violations = 0;
        double worst_margin = 1e300;
        for (int inst = 0; inst < 500; ++inst)
        {
            sc.seed = 10000 + static_cast<std::uint64_t>(inst);
            const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
            const RotationState rot = test::random_interior_rotation(rng, 16, sc.theta_max_rad(), 0.0);
            const PhaseState v = test::random_phase(rng, pb.model.num_elements());
            const Eigen::MatrixXcd H = pb.model.effective_channels(rot, v);
            const double mmse = test::reference_sum_rate(mmse_beamformer(H, pb.powers, pb.noise).W, H, pb.powers, pb.noise);
            double best = 0.0;
            Eigen::MatrixXcd W(H.rows(), H.cols());
            for (int trial = 0; trial < 1000; ++trial)
            {
                for (Eigen::Index i = 0; i < W.size(); ++i)
                    W.data()[i] = test::cd(g(rng), g(rng));
                W.colwise().normalize();
                best = std::max(best, test::reference_sum_rate(W, H, pb.powers, pb.noise));
            }
            violations += mmse < best ? 1 : 0;
            worst_margin = std::min(worst_margin, mmse - best);
        }
        return {violations == 0, fmt::format("500 instances x 1000 random combiners, violations {}, min margin {:.3e} bps/Hz",
                                             violations, worst_margin)};
    }

    // ---- 6 ------------------------------------------------------------------
    Verdict brute_force_oracle()
    {
        double worst = 1e300, worst_oracle_secs = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed)
        {
            const ScenarioConfig sc = test::desk_scenario(2, 1, 2, 2, 2, seed);
            const Problem pb = Problem::from_scenario(sc, generate_realization(sc));
            const RotationState rot(2, sc.theta_max_rad());
            // Phase block alternated with MMSE at a fixed rotation.
            const SolveResult res = ao_solve(pb, rot, PhaseState::ones(4), OptimizerConfig{}, Scheme::FixedIrs);
            const ChannelSet cs = pb.model.evaluate(rot);
            std::vector<Eigen::MatrixXcd> q{cs.cascaded(0), cs.cascaded(1)};
            const auto t0 = Clock::now();
            const double grid = test::brute_force_phase_grid(cs.direct, q, pb.powers, pb.noise, 16);
            worst_oracle_secs = std::max(worst_oracle_secs, seconds_since(t0));
            worst = std::min(worst, res.report.final_sum_rate() - grid);
        }
        return {worst >= -0.05 && worst_oracle_secs < 120.0,
                fmt::format("10 seeds, min(optimized - grid) {:+.4f} >= -0.05 bps/Hz, oracle {:.2f} s/seed < 120 s", worst,
                            worst_oracle_secs)};
    }

    // ---- 7 ------------------------------------------------------------------
    Verdict power_conservation()
    {
        // The pattern depends only on u = cos(angle to boresight): integral = 2 pi * int_0^1 G(u) du (Simpson).
        std::string detail;
        bool ok = true;
        for (double p : {1.0, 1.5, 2.0, 4.0})
        {
            const GainPattern pattern(p);
            const int n = 20000;
            const double h = 1.0 / n;
            double s = antenna_gain(0.0, pattern) + antenna_gain(1.0, pattern);
            for (int i = 1; i < n; ++i)
                s += (i % 2 ? 4.0 : 2.0) * antenna_gain(i * h, pattern);
            const double total = 2.0 * test::kPi * s * h / 3.0;
            const double rel = std::abs(total - 4.0 * test::kPi) / (4.0 * test::kPi);
            ok = ok && rel < 1e-3;
            detail += fmt::format("p={} rel err {:.1e}; ", p, rel);
        }
        return {ok, detail + "tol 1e-3"};
    }

    // ---- 8 ------------------------------------------------------------------
    Verdict geometry_constants()
    {
        const ScenarioConfig sc;
        const double D = sc.irs_layout().aperture_diagonal();
        const double dF = fraunhofer_distance(D, sc.wavelength());
        const FieldRegionReport r = validate_field_regions(generate_realization(sc), sc);
        const bool ok = std::abs(D - 0.12 * std::sqrt(2.0)) < 1e-12 && std::abs(dF - 5.38) <= 0.05 &&
                        std::abs(r.bs_distance_m - 3.2016) <= 0.001 && std::abs(r.fraunhofer_distance_m - dF) < 1e-12;
        return {ok, fmt::format("D = {:.6f} m, d_F = {:.5f} m (5.38 +- 0.05), BS-IRS {:.5f} m (3.2016 +- 0.001)", D, dF,
                                r.bs_distance_m)};
    }

    // ---- 9, 10 --------------------------------------------------------------
    struct SweepRun
    {
        fs::path irs_dir, power_dir;
        double seconds = 0.0;
        bool ok = false;
    };

    fs::path write_sweep_config(const fs::path &dir, const std::string &source, std::vector<double> values)
    {
        RunConfig cfg = load_run_config(kConfigDir / source);
        cfg.sweep->values = std::move(values);
        cfg.sweep->num_seeds = 100;
        cfg.sweep->first_seed = 0;
        const fs::path path = dir / source;
        std::ofstream(path) << dump_run_config(cfg);
        return path;
    }

    SweepRun run_sweeps(const fs::path &root)
    {
        SweepRun run;
        fs::create_directories(root);
        run.irs_dir = root / "irs_elements";
        run.power_dir = root / "tx_power";
        const fs::path irs_cfg = write_sweep_config(root, "sweep_irs_elements.yaml", {16, 64, 144});
        const fs::path power_cfg = write_sweep_config(root, "sweep_power.yaml", {0, 10, 20, 30});
        const auto t0 = Clock::now();
        const int a = cli({"sweep", "-c", irs_cfg.string(), "-o", run.irs_dir.string(), "--no-header"});
        const int b = cli({"sweep", "-c", power_cfg.string(), "-o", run.power_dir.string(), "--no-header"});
        run.seconds = seconds_since(t0);
        run.ok = a == 0 && b == 0;
        return run;
    }

    // (scheme, value) -> mean, read back from the aggregate CSV.
    std::map<std::pair<std::string, double>, double> read_means(const fs::path &file)
    {
        std::map<std::pair<std::string, double>, double> means;
        std::istringstream in(slurp(file));
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line))
        {
            std::vector<std::string> f;
            std::stringstream ls(line);
            for (std::string cell; std::getline(ls, cell, ',');)
                f.push_back(cell);
            if (f.size() != 6)
                throw std::runtime_error("malformed aggregate row: " + line);
            if (std::stoi(f[5]) != 100)
                throw std::runtime_error("aggregate with failed seeds: " + line);
            means[{f[2], std::stod(f[1])}] = std::stod(f[3]);
        }
        return means;
    }

    Verdict trend_reproduction(const SweepRun &run)
    {
        if (!run.ok)
            return {false, "sweep command failed"};
        auto n = read_means(run.irs_dir / "sweep_aggregate.csv");
        auto p = read_means(run.power_dir / "sweep_aggregate.csv");
        const bool a = n.at({"ra-irs", 64}) > n.at({"fixed-irs", 64}) && n.at({"fixed-irs", 64}) > n.at({"ra-only", 64});
        const bool b = n.at({"ra-only", 16}) == n.at({"ra-only", 64}) && n.at({"ra-only", 64}) == n.at({"ra-only", 144});
        const double gap16 = n.at({"ra-irs", 16}) - n.at({"fixed-irs", 16});
        const double gap144 = n.at({"ra-irs", 144}) - n.at({"fixed-irs", 144});
        const bool c = gap144 > gap16;
        bool d = true;
        for (const char *s : {"ra-irs", "fixed-irs", "ra-only"})
            for (double lo : {0.0, 10.0, 20.0})
                d = d && p.at({s, lo}) < p.at({s, lo + 10.0});
        const bool fast = run.seconds < 600.0;
        return {a && b && c && d && fast,
                fmt::format("(a) {:.4f} > {:.4f} > {:.4f} {}; (b) ra-only {:.6f} {}; (c) gap {:.4f} -> {:.4f} {}; "
                            "(d) power monotone {}; {:.0f} s < 600 s on {} thread(s)",
                            n.at({"ra-irs", 64}), n.at({"fixed-irs", 64}), n.at({"ra-only", 64}), a ? "ok" : "no",
                            n.at({"ra-only", 64}), b ? "ok" : "no", gap16, gap144, c ? "ok" : "no", d ? "ok" : "no",
                            run.seconds, std::max(1u, std::thread::hardware_concurrency()))};
    }

    Verdict determinism(const SweepRun &first, const SweepRun &second)
    {
        if (!first.ok || !second.ok)
            return {false, "sweep command failed"};
        bool same = true;
        std::size_t bytes = 0;
        for (const auto &[a, b] : {std::pair{first.irs_dir, second.irs_dir}, std::pair{first.power_dir, second.power_dir}})
            for (const char *file : {"sweep_rows.csv", "sweep_aggregate.csv"})
            {
                const std::string x = slurp(a / file), y = slurp(b / file);
                same = same && !x.empty() && x == y;
                bytes += x.size();
            }
        return {same, fmt::format("repeated sweep CSVs {} ({} bytes compared)", same ? "bit-identical" : "DIFFER", bytes)};
    }
}

int main()
{
    const auto start = Clock::now();
    report(1, "gradient fidelity", guarded(gradient_fidelity));

    AoStats ao;
    const Verdict ao_run = guarded([&] {
        ao = run_ao_seeds();
        return Verdict{true, ""};
    });
    if (!ao_run.pass)
    {
        report(2, "monotone AO", ao_run);
        report(3, "manifold feasibility", ao_run);
        report(4, "FP identity", ao_run);
    }
    else
    {
        report(2, "monotone AO",
               {ao.monotone && ao.converged && ao.max_seconds < 5.0,
                fmt::format("20 seeds, worst drop {:.1e} <= 1e-9, converged {}, max {} iterations <= 50, "
                            "slowest solve {:.2f} s < 5 s",
                            ao.worst_drop, ao.converged ? "all" : "NOT all", ao.max_iterations, ao.max_seconds)});
        const double theta_max = 60.0 * test::kPi / 180.0;
        report(3, "manifold feasibility",
               {ao.worst_modulus < 1e-12 && ao.theta_min >= 0.0 && ao.theta_max <= theta_max,
                fmt::format("max ||v_n| - 1| {:.1e} < 1e-12, theta in [{:.4f}, {:.4f}] deg within [0, 60]",
                            ao.worst_modulus, ao.theta_min * 180.0 / test::kPi, ao.theta_max * 180.0 / test::kPi)});
        report(4, "FP identity",
               {ao.beta_updates > 0 && ao.worst_fp_gap < 1e-9,
                fmt::format("{} auxiliary updates, worst |surrogate - rate| {:.1e} < 1e-9", ao.beta_updates,
                            ao.worst_fp_gap)});
    }

    report(5, "MMSE dominance", guarded(mmse_dominance));
    report(6, "brute-force oracle", guarded(brute_force_oracle));
    report(7, "power conservation", guarded(power_conservation));
    report(8, "geometry constants", guarded(geometry_constants));

    const fs::path root = fs::temp_directory_path() / fmt::format("raris_acceptance_{}", ::getpid());
    SweepRun first, second;
    report(9, "trend reproduction", guarded([&] {
               first = run_sweeps(root / "first");
               return trend_reproduction(first);
           }));
    report(10, "determinism", guarded([&] {
               second = run_sweeps(root / "second");
               return determinism(first, second);
           }));
    std::error_code ec;
    fs::remove_all(root, ec);

    fmt::print("{} of 10 criteria passed in {:.0f} s\n", 10 - failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
