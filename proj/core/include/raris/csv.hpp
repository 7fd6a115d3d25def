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

#ifndef RARIS_CSV_HPP
#define RARIS_CSV_HPP

#include "raris/optimizer.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace raris
{
    // Shortest decimal text that parses back to the same double.
    std::string format_double(double x);

    // "# generated <UTC timestamp> by raris <tool>"
    std::string timestamp_comment(const std::string &tool);

    // Writes through a temporary file in the same directory, then renames it over `path`.
    void write_file_atomically(const std::filesystem::path &path, const std::function<void(std::ostream &)> &writer);

    // Columns: iteration,sum_rate_bpshz (iteration 0 is the starting point).
    void write_trajectory_csv(std::ostream &os, const SolveReport &report, bool header_comment);

    // Human-readable summary of one solve.
    void write_solve_summary(std::ostream &os, const SolveReport &report, bool stable);
}

#endif
