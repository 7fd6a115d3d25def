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

#ifndef RARIS_EXPERIMENT_HPP
#define RARIS_EXPERIMENT_HPP

#include "raris/optimizer.hpp"
#include "raris/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace raris
{
    enum class SweepVariable
    {
        Users,
        IrsElements,
        TxPower
    };

    std::string_view to_string(SweepVariable variable);
    // Accepts "users", "irs_elements", "tx_power_dbm" (and the enum-style spellings).
    SweepVariable parse_sweep_variable(std::string_view name);

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::IrsElements;
        std::vector<double> values;
        std::vector<Scheme> schemes{Scheme::RaIrs, Scheme::FixedIrs, Scheme::RaOnly};
        int num_seeds = 100;
        std::uint64_t first_seed = 0;
        ScenarioConfig base{};
        OptimizerConfig optimizer{};
    };

    // Throws ConfigError for empty value lists, non-square IRS sizes, non-positive user counts, ...
    void validate(const SweepSpec &plan);

    // Copy of `base` with the sweep variable set; IRS sizes must be perfect squares.
    ScenarioConfig apply_sweep_value(const ScenarioConfig &base, SweepVariable variable, double value);

    struct SweepRow
    {
        SweepVariable variable = SweepVariable::IrsElements;
        double value = 0.0;
        Scheme scheme = Scheme::RaIrs;
        std::uint64_t seed = 0;
        double sum_rate = 0.0;
        int iterations = 0;
        bool converged = false;
        double wall_time = 0.0;
        bool failed = false;
        std::string error;
    };

    struct AggregateRow
    {
        SweepVariable variable = SweepVariable::IrsElements;
        double value = 0.0;
        Scheme scheme = Scheme::RaIrs;
        double mean = 0.0;
        double stderr_ = 0.0;
        int num_seeds = 0; // successful solves only
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows;            // sorted by (value order, scheme order, seed)
        std::vector<AggregateRow> aggregates;  // one per (value, scheme)
    };

    /// Runs every (value, scheme, seed) solve. All schemes at a sweep point share the same
    /// realization seeds. Work is spread over `jobs` threads (0 = hardware concurrency);
    /// the result does not depend on the job count. A failing solve becomes a row with
    /// `failed` set and the sweep carries on.
    SweepResult run_sweep(const SweepSpec &plan, int jobs = 0);

    // Mean and standard error of the non-failed rows for each (value, scheme).
    std::vector<AggregateRow> aggregate(const std::vector<SweepRow> &rows);

    struct GapPoint
    {
        double value = 0.0;
        double mean_proposed = 0.0;
        double mean_fixed = 0.0;
        double gap = 0.0;              // proposed - fixed, bps/Hz
        double relative_gain_pct = 0.0;
    };

    struct GapReport
    {
        SweepVariable variable = SweepVariable::IrsElements;
        std::vector<GapPoint> points; // ascending value
        // Gap at the largest sweep value exceeds the gap at the smallest.
        bool gap_grows = false;
    };

    // Compares `proposed` against `baseline` (RaIrs vs FixedIrs by default).
    // Throws std::invalid_argument if either scheme is missing or fewer than two points exist.
    GapReport summarize_gaps(const std::vector<AggregateRow> &aggregates, Scheme proposed = Scheme::RaIrs,
                             Scheme baseline = Scheme::FixedIrs);

    struct CsvOptions
    {
        // Leading "# generated ..." comment line with a timestamp.
        bool header_comment = true;
        // Write wall-clock columns as 0 so files are byte-stable.
        bool stable = false;
    };

    inline constexpr std::string_view kSweepRowHeader =
        "sweep_var,sweep_value,scheme,seed,sum_rate_bpshz,iterations,converged,wall_time_s";
    inline constexpr std::string_view kAggregateHeader =
        "sweep_var,sweep_value,scheme,mean_bpshz,stderr_bpshz,num_seeds";

    void write_sweep_rows_csv(std::ostream &os, const std::vector<SweepRow> &rows, const CsvOptions &opts = {});
    void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows, const CsvOptions &opts = {});
    void write_gap_report(std::ostream &os, const GapReport &report);
}

#endif
