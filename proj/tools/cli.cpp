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

#include "cli.hpp"

#include "raris/channel.hpp"
#include "raris/config_io.hpp"
#include "raris/csv.hpp"
#include "raris/experiment.hpp"
#include "raris/gradient_check.hpp"
#include "raris/optimizer.hpp"
#include "raris/realization.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>

namespace raris::cli
{
    namespace
    {
        namespace fs = std::filesystem;

        struct Invocation
        {
            std::string config_path;
            std::string output_dir;
            std::optional<std::uint64_t> seed;
            std::optional<std::string> scheme;
            int verbosity = 0;
            bool no_header = false;
            int jobs = 0;
            double corrupt_gradient = 0.0;
        };

        // Solver produced a state outside the feasible set or a decreasing trajectory.
        struct InvariantViolation : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        fs::path output_directory(const Invocation &inv)
        {
            if (!inv.output_dir.empty())
                return inv.output_dir;
            if (const char *env = std::getenv(kOutputDirEnv); env && *env)
                return env;
            return "raris-out";
        }

        RunConfig load(const Invocation &inv)
        {
            RunConfig cfg = load_run_config(inv.config_path);
            if (inv.seed)
            {
                cfg.scenario.seed = *inv.seed;
                cfg.seed_set = true;
                if (cfg.sweep)
                    cfg.sweep->first_seed = *inv.seed;
            }
            return cfg;
        }

        Scheme scheme_of(const Invocation &inv)
        {
            if (!inv.scheme)
                return Scheme::RaIrs;
            try
            {
                return parse_scheme(*inv.scheme);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError("--scheme", e.what());
            }
        }

        const char *regime(const FieldRegionReport &r)
        {
            return r.bs_in_near_field ? "near field" : "far field";
        }

        void print_banner(std::ostream &out, const ScenarioConfig &sc, const GeometryRealization &geom)
        {
            const FieldRegionReport report = validate_field_regions(geom, sc);
            const Vec3 n = geom.irs_normal;
            fmt::print(out, "raris: carrier {} Hz, wavelength {:.6g} m\n", sc.carrier_hz, sc.wavelength());
            fmt::print(out, "  BS {}x{} at [{}, {}, {}] m, spacing {:.6g} m, theta_max {} deg, p = {}\n",
                       sc.bs_count_x, sc.bs_count_z, sc.bs_center.x(), sc.bs_center.y(), sc.bs_center.z(),
                       sc.bs_spacing(), sc.theta_max_deg, sc.directivity_bs);
            fmt::print(out, "  IRS {}x{} at [{}, {}, {}] m, spacing {:.6g} m, normal [{:.4f}, {:.4f}, {:.4f}], p_R = {}\n",
                       sc.irs_count_y, sc.irs_count_z, sc.irs_center.x(), sc.irs_center.y(), sc.irs_center.z(),
                       sc.irs_spacing_m, n.x(), n.y(), n.z(), sc.directivity_irs);
            fmt::print(out, "  users {}, tx power {} dBm, noise {} dBm, direct attenuation {} dB, L = {}, P = {}\n",
                       sc.num_users, sc.tx_power_dbm, sc.noise_dbm, sc.direct_attenuation_db,
                       sc.num_direct_scatterers, sc.num_irs_scatterers);
            fmt::print(out, "  IRS aperture diagonal {:.6g} m, Fraunhofer distance {:.6g} m\n",
                       sc.irs_layout().aperture_diagonal(), report.fraunhofer_distance_m);
            fmt::print(out, "  BS-IRS distance {:.6g} m ({})\n", report.bs_distance_m, regime(report));
            fmt::print(out, "  seed {}\n", sc.seed);
            for (const auto &w : report.warnings)
                fmt::print(out, "  warning: {}\n", w);
        }

        void banner_if_verbose(const Invocation &inv, std::ostream &out, const ScenarioConfig &sc)
        {
            if (inv.verbosity >= 1)
                print_banner(out, sc, generate_realization(sc));
        }

        // ---- subcommands ----------------------------------------------------

        int cmd_solve(const Invocation &inv, std::ostream &out)
        {
            const RunConfig cfg = load(inv);
            const Scheme scheme = scheme_of(inv);
            banner_if_verbose(inv, out, cfg.scenario);

            const double theta_max = cfg.scenario.theta_max_rad();
            SolveObserver observer;
            observer.on_rotation = [theta_max](const RotationState &r) {
                for (std::size_t m = 0; m < r.size(); ++m)
                    if (!(r.theta(m) >= 0.0 && r.theta(m) <= theta_max) || !(r.phi(m) >= 0.0 && r.phi(m) < kTwoPi))
                        throw InvariantViolation(fmt::format("antenna {} left the feasible angle set", m));
            };
            observer.on_phase = [](const PhaseState &v) {
                if (v.max_modulus_error() > PhaseState::kModulusTolerance)
                    throw InvariantViolation("phase vector left the unit circle");
            };

            SolveResult result;
            try
            {
                result = ao_solve(cfg.scenario, cfg.optimizer, scheme, &observer);
            }
            catch (const ConfigError &)
            {
                throw;
            }
            catch (const InvariantViolation &)
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw InvariantViolation(e.what());
            }

            const SolveReport &report = result.report;
            double previous = report.initial_sum_rate;
            for (double r : report.sum_rate_trajectory)
            {
                if (!std::isfinite(r) || r < previous - 1e-9)
                    throw InvariantViolation(fmt::format("sum rate decreased from {} to {}", previous, r));
                previous = r;
            }

            const fs::path dir = output_directory(inv);
            write_file_atomically(dir / "trajectory.csv",
                                  [&](std::ostream &os) { write_trajectory_csv(os, report, !inv.no_header); });
            write_file_atomically(dir / "summary.txt", [&](std::ostream &os) {
                if (!inv.no_header)
                    os << timestamp_comment("solve") << '\n';
                write_solve_summary(os, report, inv.no_header);
            });

            fmt::print(out, "{}: sum rate {:.6f} bps/Hz after {} iterations ({})\n", to_string(scheme),
                       report.final_sum_rate(), report.iterations_used,
                       report.converged ? "converged" : "iteration limit");
            if (inv.verbosity >= 1)
                fmt::print(out, "wrote {} and {}\n", (dir / "summary.txt").string(), (dir / "trajectory.csv").string());
            return kOk;
        }

        int cmd_sweep(const Invocation &inv, std::ostream &out)
        {
            RunConfig cfg = load(inv);
            if (!cfg.sweep)
                throw ConfigError("sweep", "section is required for the sweep subcommand");
            SweepSpec plan = *cfg.sweep;
            if (inv.scheme)
                plan.schemes = {scheme_of(inv)};
            banner_if_verbose(inv, out, plan.base);

            const int jobs = inv.jobs > 0 ? inv.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
            if (inv.verbosity >= 1)
                fmt::print(out, "sweep over {}: {} values x {} schemes x {} seeds on {} threads\n",
                           to_string(plan.variable), plan.values.size(), plan.schemes.size(), plan.num_seeds, jobs);

            const SweepResult result = run_sweep(plan, jobs);

            const fs::path dir = output_directory(inv);
            const CsvOptions opts{!inv.no_header, inv.no_header};
            write_file_atomically(dir / "sweep_rows.csv",
                                  [&](std::ostream &os) { write_sweep_rows_csv(os, result.rows, opts); });
            write_file_atomically(dir / "sweep_aggregate.csv",
                                  [&](std::ostream &os) { write_aggregate_csv(os, result.aggregates, opts); });

            std::size_t failed = 0;
            for (const auto &row : result.rows)
                failed += row.failed ? 1 : 0;
            for (const auto &a : result.aggregates)
                fmt::print(out, "{}={} {}: mean {:.4f} bps/Hz (stderr {:.4f}, {} seeds)\n", to_string(a.variable),
                           format_double(a.value), to_string(a.scheme), a.mean, a.stderr_, a.num_seeds);
            if (failed > 0)
                fmt::print(out, "{} solves failed\n", failed);

            const auto has = [&](Scheme s) {
                return std::find(plan.schemes.begin(), plan.schemes.end(), s) != plan.schemes.end();
            };
            if (plan.values.size() >= 2 && has(Scheme::RaIrs) && has(Scheme::FixedIrs))
                write_gap_report(out, summarize_gaps(result.aggregates));
            return kOk;
        }

        int cmd_check_grad(const Invocation &inv, std::ostream &out)
        {
            const RunConfig cfg = load(inv);
            banner_if_verbose(inv, out, cfg.scenario);
            GradientCheckConfig gc = cfg.check_grad;
            gc.seed = cfg.scenario.seed;
            gc.corruption = inv.corrupt_gradient;

            const auto start = std::chrono::steady_clock::now();
            const GradientCheckResult r = check_gradients(cfg.scenario, gc);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            fmt::print(out, "checked {} states in {:.2f} s\n", r.states_checked, secs);
            fmt::print(out, "rotation: worst relative error {:.3e} (tol {:.0e}, state seed {}) {}\n",
                       r.worst_rotation_error, r.rotation_tol, r.worst_rotation_state,
                       r.rotation_passed() ? "ok" : "FAILED");
            fmt::print(out, "phase:    worst relative error {:.3e} (tol {:.0e}, state seed {}) {}\n",
                       r.worst_phase_error, r.phase_tol, r.worst_phase_state, r.phase_passed() ? "ok" : "FAILED");
            return r.passed() ? kOk : kGradientCheckFailed;
        }

        int cmd_validate_geometry(const Invocation &inv, std::ostream &out)
        {
            const RunConfig cfg = load(inv);
            const GeometryRealization geom = generate_realization(cfg.scenario);
            print_banner(out, cfg.scenario, geom);
            const FieldRegionReport report = validate_field_regions(geom, cfg.scenario);
            for (std::size_t k = 0; k < report.user_distances_m.size(); ++k)
                fmt::print(out, "  user {} at [{:.3f}, {:.3f}, {:.3f}] m, {:.4f} m from the IRS\n", k,
                           geom.user_positions[k].x(), geom.user_positions[k].y(), geom.user_positions[k].z(),
                           report.user_distances_m[k]);
            fmt::print(out, "geometry {}\n", report.ok() ? "ok" : "has warnings");
            return kOk;
        }

        int cmd_dump_channels(const Invocation &inv, std::ostream &out)
        {
            const RunConfig cfg = load(inv);
            const Scheme scheme = scheme_of(inv);
            banner_if_verbose(inv, out, cfg.scenario);
            const GeometryRealization geom = generate_realization(cfg.scenario);
            const ChannelModel model(geom, cfg.scenario, scheme != Scheme::RaOnly);
            const ChannelSet channels = model.evaluate(initial_rotation(geom, cfg.scenario, scheme));

            const fs::path path = output_directory(inv) / "channels.csv";
            write_file_atomically(path, [&](std::ostream &os) {
                if (!inv.no_header)
                    os << timestamp_comment("dump-channels") << '\n';
                write_channel_csv(os, channels);
            });
            fmt::print(out, "wrote {}\n", path.string());
            return kOk;
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Rotatable-antenna BS with IRS assistance: uplink sum-rate optimization"};
        app.set_version_flag("--version", "raris 0.1.0");
        app.require_subcommand(1);

        Invocation inv;
        auto add_common = [&inv](CLI::App *sub) {
            sub->add_option("-c,--config", inv.config_path, "YAML run configuration")->required();
            sub->add_option("-o,--output", inv.output_dir,
                            fmt::format("Output directory (default ${} or ./raris-out)", kOutputDirEnv));
            sub->add_option("--seed", inv.seed, "Realization seed; overrides the config file");
            sub->add_flag_function(
                "-v,--verbose", [&inv](std::int64_t count) { inv.verbosity = static_cast<int>(count); },
                "Print the startup banner (repeat for more)");
            sub->add_flag("--no-header", inv.no_header, "Omit timestamp lines and wall times for byte-stable output");
        };

        CLI::App *solve = app.add_subcommand("solve", "Run one alternating-optimization solve");
        add_common(solve);
        solve->add_option("--scheme", inv.scheme, "ra-irs | fixed-irs | ra-only");

        CLI::App *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over users, IRS size or power");
        add_common(sweep);
        sweep->add_option("--scheme", inv.scheme, "Restrict the sweep to one scheme");
        sweep->add_option("-j,--jobs", inv.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

        CLI::App *check = app.add_subcommand("check-grad", "Compare analytic gradients with finite differences");
        add_common(check);
        check->add_option("--corrupt-gradient", inv.corrupt_gradient)->group("");

        CLI::App *geometry = app.add_subcommand("validate-geometry", "Report field regions of a realization");
        add_common(geometry);

        CLI::App *dump = app.add_subcommand("dump-channels", "Write the channel matrices of a realization");
        add_common(dump);
        dump->add_option("--scheme", inv.scheme, "Scheme whose initial rotations are used");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty())
            reversed.pop_back();
        try
        {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return kOk;
        }
        catch (const CLI::CallForVersion &)
        {
            out << app.version() << '\n';
            return kOk;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << '\n';
            err << app.help();
            return kUsage;
        }

        try
        {
            if (*solve)
                return cmd_solve(inv, out);
            if (*sweep)
                return cmd_sweep(inv, out);
            if (*check)
                return cmd_check_grad(inv, out);
            if (*geometry)
                return cmd_validate_geometry(inv, out);
            if (*dump)
                return cmd_dump_channels(inv, out);
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << '\n';
            return kConfigError;
        }
        catch (const InvariantViolation &e)
        {
            err << "invariant violation: " << e.what() << '\n';
            return kInvariantViolation;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return kInvariantViolation;
        }
        return kUsage;
    }
}
