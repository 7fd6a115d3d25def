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

#ifndef RARIS_CONFIG_IO_HPP
#define RARIS_CONFIG_IO_HPP

#include "raris/experiment.hpp"
#include "raris/gradient_check.hpp"
#include "raris/optimizer.hpp"
#include "raris/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace raris
{
    // Everything a YAML run file can carry. Missing keys keep their defaults.
    struct RunConfig
    {
        ScenarioConfig scenario{};
        OptimizerConfig optimizer{};
        std::optional<SweepSpec> sweep{}; // `base` and `optimizer` mirror the fields above
        GradientCheckConfig check_grad{};
        bool seed_set = false;            // scenario.seed given explicitly
    };

    // Throws ConfigError (field named) on unknown keys, wrong types or invalid values.
    RunConfig parse_run_config(const std::string &yaml_text);
    RunConfig load_run_config(const std::filesystem::path &path);

    // YAML text that parses back to `cfg`.
    std::string dump_run_config(const RunConfig &cfg);
}

#endif
