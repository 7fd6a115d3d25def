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

#ifndef RARIS_TOOLS_CLI_HPP
#define RARIS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace raris::cli
{
    enum ExitCode : int
    {
        kOk = 0,
        kUsage = 1,
        kConfigError = 2,
        kInvariantViolation = 3,
        kGradientCheckFailed = 4
    };

    // Environment variable naming the default output directory.
    inline constexpr const char *kOutputDirEnv = "RARIS_OUTPUT_DIR";

    // Runs the command line `args` (args[0] is the program name) and returns the exit status.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
