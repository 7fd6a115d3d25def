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

#include "raris/experiment.hpp"

#include "raris/csv.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>

namespace raris
{
    std::string_view to_string(SweepVariable variable)
    {
        switch (variable)
        {
        case SweepVariable::Users:
            return "users";
        case SweepVariable::IrsElements:
            return "irs_elements";
        case SweepVariable::TxPower:
            return "tx_power_dbm";
        }
        return "unknown";
    }

    SweepVariable parse_sweep_variable(std::string_view name)
    {
        std::string key;
        for (char c : name)
            key.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (key == "users" || key == "num_users" || key == "k")
            return SweepVariable::Users;
        if (key == "irs_elements" || key == "n" || key == "num_irs_elements")
            return SweepVariable::IrsElements;
        if (key == "tx_power_dbm" || key == "tx_power" || key == "p")
            return SweepVariable::TxPower;
        throw ConfigError("sweep.variable", fmt::format("unknown sweep variable '{}'", name));
    }

    namespace
    {
        int checked_square_side(double value)
        {
            if (!(value >= 1.0) || value != std::floor(value))
                throw ConfigError("sweep.values", fmt::format("IRS size {} is not a positive integer", value));
            const int side = static_cast<int>(std::lround(std::sqrt(value)));
            if (side * side != static_cast<int>(value))
                throw ConfigError("sweep.values", fmt::format("IRS size {} is not a perfect square", value));
            return side;
        }
    }

    ScenarioConfig apply_sweep_value(const ScenarioConfig &base, SweepVariable variable, double value)
    {
        ScenarioConfig cfg = base;
        switch (variable)
        {
        case SweepVariable::Users:
            if (!(value >= 1.0) || value != std::floor(value))
                throw ConfigError("sweep.values", fmt::format("user count {} is not a positive integer", value));
            cfg.num_users = static_cast<int>(value);
            break;
        case SweepVariable::IrsElements: {
            const int side = checked_square_side(value);
            cfg.irs_count_y = side;
            cfg.irs_count_z = side;
            break;
        }
        case SweepVariable::TxPower:
            if (!std::isfinite(value))
                throw ConfigError("sweep.values", "transmit power must be finite");
            cfg.tx_power_dbm = value;
            break;
        }
        return cfg;
    }

    void validate(const SweepSpec &plan)
    {
        if (plan.values.empty())
            throw ConfigError("sweep.values", "at least one value is required");
        if (plan.schemes.empty())
            throw ConfigError("sweep.schemes", "at least one scheme is required");
        if (plan.num_seeds < 1)
            throw ConfigError("sweep.num_seeds", "must be at least 1");
        validate(plan.optimizer);
        for (double v : plan.values)
            validate(apply_sweep_value(plan.base, plan.variable, v));
    }

    SweepResult run_sweep(const SweepSpec &plan, int jobs)
    {
        validate(plan);
        const std::size_t nv = plan.values.size(), ns = plan.schemes.size();
        const std::size_t nseed = static_cast<std::size_t>(plan.num_seeds);
        const std::size_t total = nv * ns * nseed;

        std::vector<SweepRow> rows(total);
        std::atomic<std::size_t> next{0};

        auto worker = [&] {
            for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
            {
                const std::size_t iv = idx / (ns * nseed);
                const std::size_t is = (idx / nseed) % ns;
                const std::size_t ik = idx % nseed;
                SweepRow &row = rows[idx];
                row.variable = plan.variable;
                row.value = plan.values[iv];
                row.scheme = plan.schemes[is];
                row.seed = plan.first_seed + ik;
                try
                {
                    ScenarioConfig sc = apply_sweep_value(plan.base, plan.variable, row.value);
                    sc.seed = row.seed;
                    const SolveResult res = ao_solve(sc, plan.optimizer, row.scheme);
                    row.sum_rate = res.report.final_sum_rate();
                    row.iterations = res.report.iterations_used;
                    row.converged = res.report.converged;
                    row.wall_time = res.report.wall_time;
                    if (!std::isfinite(row.sum_rate))
                    {
                        row.failed = true;
                        row.error = "non-finite sum rate";
                    }
                }
                catch (const std::exception &e)
                {
                    row.failed = true;
                    row.error = e.what();
                    row.sum_rate = std::nan("");
                }
            }
        };

        int threads = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(total, 1)));
        if (threads <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(worker);
        }

        SweepResult result;
        result.rows = std::move(rows);
        result.aggregates = aggregate(result.rows);
        return result;
    }

    std::vector<AggregateRow> aggregate(const std::vector<SweepRow> &rows)
    {
        // Keep first-appearance order of (value, scheme).
        std::vector<std::pair<double, Scheme>> order;
        std::map<std::pair<double, int>, std::vector<double>> samples;
        SweepVariable variable = rows.empty() ? SweepVariable::IrsElements : rows.front().variable;
        for (const SweepRow &r : rows)
        {
            const auto key = std::make_pair(r.value, static_cast<int>(r.scheme));
            auto it = samples.find(key);
            if (it == samples.end())
            {
                order.emplace_back(r.value, r.scheme);
                it = samples.emplace(key, std::vector<double>{}).first;
            }
            if (!r.failed)
                it->second.push_back(r.sum_rate);
        }

        std::vector<AggregateRow> out;
        for (const auto &[value, scheme] : order)
        {
            const auto &s = samples.at({value, static_cast<int>(scheme)});
            AggregateRow a;
            a.variable = variable;
            a.value = value;
            a.scheme = scheme;
            a.num_seeds = static_cast<int>(s.size());
            if (s.empty())
            {
                a.mean = std::nan("");
                a.stderr_ = std::nan("");
            }
            else
            {
                double sum = 0.0;
                for (double x : s)
                    sum += x;
                a.mean = sum / static_cast<double>(s.size());
                double ss = 0.0;
                for (double x : s)
                    ss += (x - a.mean) * (x - a.mean);
                a.stderr_ = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) /
                                               std::sqrt(static_cast<double>(s.size()))
                                         : 0.0;
            }
            out.push_back(a);
        }
        return out;
    }

    GapReport summarize_gaps(const std::vector<AggregateRow> &aggregates, Scheme proposed, Scheme baseline)
    {
        std::map<double, double> prop, base;
        GapReport report;
        for (const AggregateRow &a : aggregates)
        {
            report.variable = a.variable;
            if (a.scheme == proposed)
                prop[a.value] = a.mean;
            if (a.scheme == baseline)
                base[a.value] = a.mean;
        }
        if (prop.empty())
            throw std::invalid_argument(fmt::format("no results for scheme {}", to_string(proposed)));
        if (base.empty())
            throw std::invalid_argument(fmt::format("no results for scheme {}", to_string(baseline)));
        for (const auto &[value, mp] : prop)
        {
            auto it = base.find(value);
            if (it == base.end())
                continue;
            GapPoint g;
            g.value = value;
            g.mean_proposed = mp;
            g.mean_fixed = it->second;
            g.gap = mp - it->second;
            g.relative_gain_pct = 100.0 * g.gap / it->second;
            report.points.push_back(g);
        }
        if (report.points.size() < 2)
            throw std::invalid_argument("gap summary needs at least two common sweep values");
        report.gap_grows = report.points.back().gap > report.points.front().gap;
        return report;
    }

    void write_sweep_rows_csv(std::ostream &os, const std::vector<SweepRow> &rows, const CsvOptions &opts)
    {
        if (opts.header_comment)
            os << timestamp_comment("sweep") << '\n';
        os << kSweepRowHeader << '\n';
        for (const SweepRow &r : rows)
        {
            fmt::print(os, "{},{},{},{},{},{},{},{}\n", to_string(r.variable), format_double(r.value),
                       to_string(r.scheme), r.seed, r.failed ? std::string("nan") : format_double(r.sum_rate),
                       r.iterations, r.converged ? 1 : 0, opts.stable ? std::string("0") : format_double(r.wall_time));
        }
    }

    void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows, const CsvOptions &opts)
    {
        if (opts.header_comment)
            os << timestamp_comment("sweep") << '\n';
        os << kAggregateHeader << '\n';
        for (const AggregateRow &a : rows)
            fmt::print(os, "{},{},{},{},{},{}\n", to_string(a.variable), format_double(a.value), to_string(a.scheme),
                       format_double(a.mean), format_double(a.stderr_), a.num_seeds);
    }

    void write_gap_report(std::ostream &os, const GapReport &report)
    {
        fmt::print(os, "{:>14} {:>12} {:>12} {:>10} {:>10}\n", to_string(report.variable), "proposed", "fixed",
                   "gap", "gain_%");
        for (const GapPoint &g : report.points)
            fmt::print(os, "{:>14} {:>12.4f} {:>12.4f} {:>10.4f} {:>10.2f}\n", format_double(g.value),
                       g.mean_proposed, g.mean_fixed, g.gap, g.relative_gain_pct);
        fmt::print(os, "gap grows with {}: {}\n", to_string(report.variable), report.gap_grows ? "yes" : "no");
    }
}
