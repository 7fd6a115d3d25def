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

#include "support.hpp"

#include "raris/csv.hpp"
#include "raris/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace raris;

namespace
{
    SweepSpec small_sweep(SweepVariable variable, std::vector<double> values, int seeds)
    {
        SweepSpec plan;
        plan.variable = variable;
        plan.values = std::move(values);
        plan.num_seeds = seeds;
        plan.base.bs_count_x = 2;
        plan.base.bs_count_z = 2;
        plan.base.irs_count_y = plan.base.irs_count_z = 4;
        plan.base.num_users = 2;
        return plan;
    }

    std::size_t count_lines(const std::string &s)
    {
        std::size_t n = 0;
        for (char c : s)
            n += c == '\n' ? 1 : 0;
        return n;
    }

    const AggregateRow &find(const std::vector<AggregateRow> &rows, double value, Scheme scheme)
    {
        for (const auto &r : rows)
            if (r.value == value && r.scheme == scheme)
                return r;
        throw std::runtime_error("missing aggregate");
    }
}

TEST_CASE("sweep value application")
{
    const ScenarioConfig base;
    const ScenarioConfig irs = apply_sweep_value(base, SweepVariable::IrsElements, 144);
    CHECK(irs.irs_count_y == 12);
    CHECK(irs.irs_count_z == 12);
    CHECK(apply_sweep_value(base, SweepVariable::Users, 6).num_users == 6);
    CHECK(apply_sweep_value(base, SweepVariable::TxPower, 30).tx_power_dbm == 30.0);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepVariable::IrsElements, 50), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepVariable::Users, 0), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepVariable::Users, 2.5), ConfigError);

    CHECK(parse_sweep_variable("tx_power_dbm") == SweepVariable::TxPower);
    CHECK(parse_sweep_variable("irs_elements") == SweepVariable::IrsElements);
    CHECK(parse_sweep_variable("users") == SweepVariable::Users);
    CHECK_THROWS(parse_sweep_variable("bandwidth"));

    SweepSpec plan = small_sweep(SweepVariable::Users, {}, 1);
    CHECK_THROWS_AS(validate(plan), ConfigError);
    plan.values = {2};
    plan.num_seeds = 0;
    CHECK_THROWS_AS(validate(plan), ConfigError);
}

TEST_CASE("sweep is deterministic and independent of the job count")
{
    const SweepSpec plan = small_sweep(SweepVariable::IrsElements, {4, 16}, 3);
    const SweepResult a = run_sweep(plan, 1);
    const SweepResult b = run_sweep(plan, 3);
    REQUIRE(a.rows.size() == 2 * 3 * 3);
    REQUIRE(b.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        CHECK(a.rows[i].value == b.rows[i].value);
        CHECK(a.rows[i].scheme == b.rows[i].scheme);
        CHECK(a.rows[i].seed == b.rows[i].seed);
        CHECK(a.rows[i].sum_rate == b.rows[i].sum_rate);
        CHECK(a.rows[i].iterations == b.rows[i].iterations);
        CHECK_FALSE(a.rows[i].failed);
    }

    std::ostringstream sa, sb;
    write_sweep_rows_csv(sa, a.rows, {false, true});
    write_sweep_rows_csv(sb, b.rows, {false, true});
    CHECK(sa.str() == sb.str());

    // Every scheme at a sweep point sees the same seeds.
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(a.rows[i].seed == a.rows[i + 3].seed);
        CHECK(a.rows[i].seed == a.rows[i + 6].seed);
    }

    // A row matches a standalone solve of the same realization.
    const ScenarioConfig sc = apply_sweep_value(plan.base, SweepVariable::IrsElements, 16);
    ScenarioConfig seeded = sc;
    seeded.seed = a.rows[9].seed;
    CHECK(a.rows[9].scheme == Scheme::RaIrs);
    CHECK(ao_solve(seeded, plan.optimizer, Scheme::RaIrs).report.final_sum_rate() == a.rows[9].sum_rate);
}

TEST_CASE("aggregation")
{
    std::vector<SweepRow> rows;
    const double rates[] = {1.0, 2.0, 4.0};
    for (int i = 0; i < 3; ++i)
    {
        SweepRow r;
        r.value = 16;
        r.seed = static_cast<std::uint64_t>(i);
        r.sum_rate = rates[i];
        rows.push_back(r);
    }
    SweepRow bad = rows[0];
    bad.failed = true;
    bad.sum_rate = std::nan("");
    rows.push_back(bad);

    const auto agg = aggregate(rows);
    REQUIRE(agg.size() == 1);
    CHECK(std::abs(agg[0].mean - 7.0 / 3.0) < 1e-12);
    // Sample standard deviation sqrt(7/3), divided by sqrt(3).
    CHECK(std::abs(agg[0].stderr_ - std::sqrt(7.0 / 3.0) / std::sqrt(3.0)) < 1e-12);
    CHECK(agg[0].num_seeds == 3);
}

TEST_CASE("sweep trends")
{
    SUBCASE("the IRS-free scheme ignores the IRS size")
    {
        SweepSpec plan = small_sweep(SweepVariable::IrsElements, {4, 16, 36}, 3);
        plan.schemes = {Scheme::RaOnly};
        const SweepResult r = run_sweep(plan, 1);
        for (std::size_t i = 0; i < 3; ++i)
        {
            CHECK(r.rows[i].sum_rate == r.rows[i + 3].sum_rate);
            CHECK(r.rows[i].sum_rate == r.rows[i + 6].sum_rate);
        }
    }

    SUBCASE("rates grow with transmit power")
    {
        const SweepSpec plan = small_sweep(SweepVariable::TxPower, {0, 10, 20, 30}, 5);
        const SweepResult r = run_sweep(plan, 1);
        for (Scheme s : plan.schemes)
            for (std::size_t i = 0; i + 1 < plan.values.size(); ++i)
                CHECK(find(r.aggregates, plan.values[i], s).mean < find(r.aggregates, plan.values[i + 1], s).mean);
    }

    SUBCASE("rotation helps on average")
    {
        SweepSpec plan;
        plan.variable = SweepVariable::IrsElements;
        plan.values = {64};
        plan.num_seeds = 50;
        plan.schemes = {Scheme::RaIrs, Scheme::FixedIrs};
        const SweepResult r = run_sweep(plan, 0);
        CHECK(find(r.aggregates, 64, Scheme::RaIrs).mean >= find(r.aggregates, 64, Scheme::FixedIrs).mean);
    }
}

TEST_CASE("gap report")
{
    std::vector<AggregateRow> agg;
    const auto add = [&](double value, Scheme s, double mean) {
        AggregateRow r;
        r.value = value;
        r.scheme = s;
        r.mean = mean;
        r.num_seeds = 1;
        agg.push_back(r);
    };
    add(16, Scheme::RaIrs, 5.2);
    add(16, Scheme::FixedIrs, 4.9);
    add(64, Scheme::RaIrs, 5.8);
    add(64, Scheme::FixedIrs, 5.1);

    const GapReport rep = summarize_gaps(agg);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].gap == doctest::Approx(0.3));
    CHECK(rep.points[1].gap == doctest::Approx(0.7));
    CHECK(rep.points[1].relative_gain_pct == doctest::Approx(100 * 0.7 / 5.1));
    CHECK(rep.gap_grows);

    const GapReport self = summarize_gaps(agg, Scheme::RaIrs, Scheme::RaIrs);
    for (const auto &p : self.points)
        CHECK(p.gap == 0.0);
    CHECK_FALSE(self.gap_grows);

    CHECK_THROWS_AS(summarize_gaps(agg, Scheme::RaIrs, Scheme::RaOnly), std::invalid_argument);
    agg.resize(2);
    CHECK_THROWS_AS(summarize_gaps(agg), std::invalid_argument);

    std::ostringstream os;
    write_gap_report(os, rep);
    CHECK(os.str().find("64") != std::string::npos);
}

TEST_CASE("csv output")
{
    const SweepSpec plan = small_sweep(SweepVariable::Users, {1, 2}, 2);
    const SweepResult r = run_sweep(plan, 1);
    std::ostringstream rows, agg;
    write_sweep_rows_csv(rows, r.rows, {true, false});
    write_aggregate_csv(agg, r.aggregates, {true, false});
    const std::string rs = rows.str(), as = agg.str();
    CHECK(rs.rfind("# generated ", 0) == 0);
    CHECK(rs.find(std::string(kSweepRowHeader) + "\n") != std::string::npos);
    CHECK(as.find(std::string(kAggregateHeader) + "\n") != std::string::npos);
    CHECK(count_lines(rs) == 2 + 2 * 3 * 2);
    CHECK(count_lines(as) == 2 + 2 * 3);
    CHECK(rs.find("users,1,ra-irs,0,") != std::string::npos);

    std::ostringstream bare;
    write_sweep_rows_csv(bare, r.rows, {false, true});
    CHECK(bare.str().rfind(std::string(kSweepRowHeader), 0) == 0);

    std::vector<SweepRow> failed{r.rows[0]};
    failed[0].failed = true;
    std::ostringstream fs;
    write_sweep_rows_csv(fs, failed, {false, true});
    CHECK(fs.str().find("nan") != std::string::npos);

    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("atomic file writes")
{
    const auto dir = std::filesystem::temp_directory_path() / "raris_atomic_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    const auto path = dir / "out.csv";
    write_file_atomically(path, [](std::ostream &os) { os << "first\n"; });
    write_file_atomically(path, [](std::ostream &os) { os << "second\n"; });
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "second");
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    CHECK_THROWS(write_file_atomically(path, [](std::ostream &) { throw std::runtime_error("boom"); }));
    std::ifstream again(path);
    std::getline(again, line);
    CHECK(line == "second");
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    std::filesystem::remove_all(dir.parent_path());
}
