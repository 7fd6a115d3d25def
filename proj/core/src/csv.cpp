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

#include "raris/csv.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace raris
{
    std::string format_double(double x)
    {
        if (std::isnan(x))
            return "nan";
        return fmt::format("{}", x);
    }

    std::string timestamp_comment(const std::string &tool)
    {
        const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
        return fmt::format("# generated {:%Y-%m-%dT%H:%M:%SZ} by raris {}", now, tool);
    }

    void write_file_atomically(const std::filesystem::path &path, const std::function<void(std::ostream &)> &writer)
    {
        const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
        std::filesystem::create_directories(dir);
        std::filesystem::path tmp = dir / fmt::format(".{}.tmp.{}", path.filename().string(), ::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error(fmt::format("cannot open {} for writing", tmp.string()));
            try
            {
                writer(out);
                out.flush();
                if (!out)
                    throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
            }
            catch (...)
            {
                out.close();
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                throw;
            }
        }
        std::filesystem::rename(tmp, path);
    }

    void write_trajectory_csv(std::ostream &os, const SolveReport &report, bool header_comment)
    {
        if (header_comment)
            os << timestamp_comment("solve") << '\n';
        os << "iteration,sum_rate_bpshz\n";
        fmt::print(os, "0,{}\n", format_double(report.initial_sum_rate));
        for (std::size_t t = 0; t < report.sum_rate_trajectory.size(); ++t)
            fmt::print(os, "{},{}\n", t + 1, format_double(report.sum_rate_trajectory[t]));
    }

    void write_solve_summary(std::ostream &os, const SolveReport &report, bool stable)
    {
        fmt::print(os, "scheme: {}\n", to_string(report.scheme));
        fmt::print(os, "initial_sum_rate_bpshz: {}\n", format_double(report.initial_sum_rate));
        fmt::print(os, "final_sum_rate_bpshz: {}\n", format_double(report.final_sum_rate()));
        fmt::print(os, "iterations: {}\n", report.iterations_used);
        fmt::print(os, "converged: {}\n", report.converged ? "true" : "false");
        for (Eigen::Index k = 0; k < report.per_user_sinr.size(); ++k)
            fmt::print(os, "sinr_user_{}: {}\n", k, format_double(report.per_user_sinr[k]));
        fmt::print(os, "pga_iterations: {}\n", report.diagnostics.pga_iterations);
        fmt::print(os, "pga_steps_accepted: {}\n", report.diagnostics.pga_steps_accepted);
        fmt::print(os, "fp_rounds: {}\n", report.diagnostics.fp_rounds);
        fmt::print(os, "rcg_iterations: {}\n", report.diagnostics.rcg_iterations);
        fmt::print(os, "wall_time_s: {}\n", stable ? std::string("0") : format_double(report.wall_time));
    }
}
