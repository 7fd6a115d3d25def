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

#include "raris/config_io.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace raris
{
    namespace
    {
        // Wraps a YAML map and remembers which keys were read, so leftovers can be reported.
        class Section
        {
        public:
            Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path))
            {
                if (node_ && !node_.IsNull() && !node_.IsMap())
                    throw ConfigError(path_.empty() ? "<root>" : path_, "expected a mapping");
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            YAML::Node get(const std::string &key)
            {
                seen_.insert(key);
                if (!node_ || node_.IsNull())
                    return YAML::Node();
                return node_[key];
            }

            template <typename T>
            void read(const std::string &key, T &out)
            {
                const YAML::Node n = get(key);
                if (!n || n.IsNull())
                    return;
                try
                {
                    out = n.as<T>();
                }
                catch (const YAML::Exception &)
                {
                    throw ConfigError(field(key), "has the wrong type");
                }
            }

            void read_vec3(const std::string &key, Vec3 &out)
            {
                const YAML::Node n = get(key);
                if (!n || n.IsNull())
                    return;
                if (!n.IsSequence() || n.size() != 3)
                    throw ConfigError(field(key), "expected a list of three numbers");
                try
                {
                    out = Vec3(n[0].as<double>(), n[1].as<double>(), n[2].as<double>());
                }
                catch (const YAML::Exception &)
                {
                    throw ConfigError(field(key), "expected a list of three numbers");
                }
            }

            void read_interval(const std::string &key, Interval &out)
            {
                const YAML::Node n = get(key);
                if (!n || n.IsNull())
                    return;
                if (!n.IsSequence() || n.size() != 2)
                    throw ConfigError(field(key), "expected [lo, hi]");
                try
                {
                    out = {n[0].as<double>(), n[1].as<double>()};
                }
                catch (const YAML::Exception &)
                {
                    throw ConfigError(field(key), "expected [lo, hi]");
                }
            }

            Section child(const std::string &key) { return Section(get(key), field(key)); }

            void finish() const
            {
                if (!node_ || node_.IsNull())
                    return;
                for (const auto &kv : node_)
                {
                    const auto key = kv.first.as<std::string>();
                    if (!seen_.count(key))
                        throw ConfigError(field(key), "unknown key");
                }
            }

        private:
            YAML::Node node_;
            std::string path_;
            std::set<std::string> seen_;
        };

        void read_box(Section &parent, const std::string &key, Box &box)
        {
            Section s = parent.child(key);
            s.read_interval("x_range_m", box.x);
            s.read_interval("y_range_m", box.y);
            s.read_interval("z_range_m", box.z);
            s.finish();
        }

        void read_scenario(Section &s, ScenarioConfig &cfg, bool &seed_set)
        {
            s.read("carrier_hz", cfg.carrier_hz);
            s.read("tx_power_dbm", cfg.tx_power_dbm);
            s.read("noise_dbm", cfg.noise_dbm);
            s.read("direct_attenuation_db", cfg.direct_attenuation_db);
            s.read("num_users", cfg.num_users);
            s.read("theta_max_deg", cfg.theta_max_deg);
            s.read("directivity_p", cfg.directivity_bs);
            s.read("directivity_p_irs", cfg.directivity_irs);
            s.read("num_direct_scatterers", cfg.num_direct_scatterers);
            s.read("num_irs_scatterers", cfg.num_irs_scatterers);
            s.read("scatterer_exclusion_m", cfg.scatterer_exclusion_m);
            {
                Section bs = s.child("bs");
                bs.read("count_x", cfg.bs_count_x);
                bs.read("count_z", cfg.bs_count_z);
                bs.read_vec3("center_m", cfg.bs_center);
                const YAML::Node sp = bs.get("spacing_m");
                if (sp && !sp.IsNull())
                {
                    try
                    {
                        cfg.bs_spacing_m = sp.as<double>();
                    }
                    catch (const YAML::Exception &)
                    {
                        throw ConfigError(bs.field("spacing_m"), "has the wrong type");
                    }
                }
                bs.finish();
            }
            {
                Section irs = s.child("irs");
                irs.read("count_y", cfg.irs_count_y);
                irs.read("count_z", cfg.irs_count_z);
                irs.read_vec3("center_m", cfg.irs_center);
                irs.read("spacing_m", cfg.irs_spacing_m);
                Vec3 normal = Vec3::Zero();
                if (const YAML::Node n = irs.get("normal"); n && !n.IsNull())
                {
                    if (!(n.IsScalar() && n.as<std::string>() == "auto"))
                    {
                        irs.read_vec3("normal", normal);
                        cfg.irs_normal = normal;
                    }
                    else
                        cfg.irs_normal.reset();
                }
                irs.finish();
            }
            {
                Section ur = s.child("user_region");
                ur.read_interval("x_range_m", cfg.user_region.x);
                ur.read_interval("y_range_m", cfg.user_region.y);
                ur.read("z_m", cfg.user_region.z);
                ur.finish();
            }
            read_box(s, "direct_scatterer_box", cfg.direct_scatterer_box);
            read_box(s, "irs_scatterer_box", cfg.irs_scatterer_box);
            const YAML::Node seed = s.get("seed");
            if (seed && !seed.IsNull())
            {
                try
                {
                    cfg.seed = seed.as<std::uint64_t>();
                }
                catch (const YAML::Exception &)
                {
                    throw ConfigError(s.field("seed"), "expected a non-negative integer");
                }
                seed_set = true;
            }
            s.finish();
        }

        void read_optimizer(Section &s, OptimizerConfig &cfg)
        {
            s.read("outer_tol_bpshz", cfg.outer_tol);
            s.read("outer_max_iters", cfg.outer_max);
            s.read("restarts", cfg.restarts);
            s.read("phase_init_seed", cfg.phase_init_seed);
            std::string init;
            s.read("phase_init", init);
            if (init == "ones")
                cfg.phase_init = PhaseInit::Ones;
            else if (init == "random")
                cfg.phase_init = PhaseInit::Random;
            else if (!init.empty())
                throw ConfigError(s.field("phase_init"), "expected 'ones' or 'random'");
            {
                Section p = s.child("pga");
                p.read("max_iters", cfg.pga.max_iters);
                p.read("armijo_c1", cfg.pga.armijo_c1);
                p.read("armijo_shrink", cfg.pga.armijo_shrink);
                p.read("initial_step_rad", cfg.pga.initial_step);
                p.read("max_backtracks", cfg.pga.max_backtracks);
                p.read("grad_tol", cfg.pga.grad_tol);
                p.finish();
            }
            {
                Section f = s.child("fp");
                f.read("outer_rounds", cfg.fp.outer_rounds);
                f.read("tol_bpshz", cfg.fp.tol);
                f.finish();
            }
            {
                Section r = s.child("rcg");
                r.read("max_iters", cfg.rcg.max_iters);
                r.read("grad_tol", cfg.rcg.grad_tol);
                r.read("armijo_c1", cfg.rcg.armijo_c1);
                r.read("armijo_shrink", cfg.rcg.armijo_shrink);
                r.read("initial_step_rad", cfg.rcg.initial_step);
                r.read("max_backtracks", cfg.rcg.max_backtracks);
                r.read("positivity_floor", cfg.rcg.positivity_floor);
                r.finish();
            }
            s.finish();
        }

        void read_sweep(Section &s, SweepSpec &plan)
        {
            std::string variable;
            s.read("variable", variable);
            if (variable.empty())
                throw ConfigError(s.field("variable"), "is required");
            plan.variable = parse_sweep_variable(variable);
            s.read("values", plan.values);
            std::vector<std::string> schemes;
            s.read("schemes", schemes);
            if (!schemes.empty())
            {
                plan.schemes.clear();
                for (const auto &name : schemes)
                {
                    try
                    {
                        plan.schemes.push_back(parse_scheme(name));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(s.field("schemes"), e.what());
                    }
                }
            }
            s.read("num_seeds", plan.num_seeds);
            s.read("first_seed", plan.first_seed);
            s.finish();
        }
    }

    RunConfig parse_run_config(const std::string &yaml_text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(yaml_text);
        }
        catch (const YAML::Exception &e)
        {
            throw ConfigError("<yaml>", e.what());
        }

        RunConfig cfg;
        Section top(root, "");
        {
            Section s = top.child("scenario");
            read_scenario(s, cfg.scenario, cfg.seed_set);
        }
        {
            Section s = top.child("optimizer");
            read_optimizer(s, cfg.optimizer);
        }
        const YAML::Node sweep = top.get("sweep");
        if (sweep && !sweep.IsNull())
        {
            SweepSpec plan;
            Section s(sweep, "sweep");
            read_sweep(s, plan);
            cfg.sweep = plan;
        }
        {
            Section s = top.child("check_grad");
            s.read("num_states", cfg.check_grad.num_states);
            s.read("fd_step", cfg.check_grad.fd_step);
            s.read("boundary_margin_rad", cfg.check_grad.boundary_margin_rad);
            s.read("rotation_tol", cfg.check_grad.rotation_tol);
            s.read("phase_tol", cfg.check_grad.phase_tol);
            s.finish();
            if (cfg.check_grad.num_states < 1)
                throw ConfigError("check_grad.num_states", "must be at least 1");
        }
        top.finish();

        validate(cfg.scenario);
        validate(cfg.optimizer);
        if (cfg.sweep)
        {
            cfg.sweep->base = cfg.scenario;
            cfg.sweep->optimizer = cfg.optimizer;
            validate(*cfg.sweep);
        }
        return cfg;
    }

    RunConfig load_run_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("<file>", fmt::format("cannot read config file '{}'", path.string()));
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_run_config(buf.str());
    }

    namespace
    {
        void emit_vec3(YAML::Emitter &out, const char *key, const Vec3 &v)
        {
            out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << v.x() << v.y() << v.z()
                << YAML::EndSeq;
        }

        void emit_interval(YAML::Emitter &out, const char *key, const Interval &i)
        {
            out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << i.lo << i.hi << YAML::EndSeq;
        }

        void emit_box(YAML::Emitter &out, const char *key, const Box &b)
        {
            out << YAML::Key << key << YAML::Value << YAML::BeginMap;
            emit_interval(out, "x_range_m", b.x);
            emit_interval(out, "y_range_m", b.y);
            emit_interval(out, "z_range_m", b.z);
            out << YAML::EndMap;
        }
    }

    std::string dump_run_config(const RunConfig &cfg)
    {
        const ScenarioConfig &s = cfg.scenario;
        const OptimizerConfig &o = cfg.optimizer;
        YAML::Emitter out;
        out.SetDoublePrecision(17);
        out << YAML::BeginMap;

        out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "carrier_hz" << YAML::Value << s.carrier_hz;
        out << YAML::Key << "tx_power_dbm" << YAML::Value << s.tx_power_dbm;
        out << YAML::Key << "noise_dbm" << YAML::Value << s.noise_dbm;
        out << YAML::Key << "direct_attenuation_db" << YAML::Value << s.direct_attenuation_db;
        out << YAML::Key << "bs" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "count_x" << YAML::Value << s.bs_count_x;
        out << YAML::Key << "count_z" << YAML::Value << s.bs_count_z;
        emit_vec3(out, "center_m", s.bs_center);
        if (s.bs_spacing_m)
            out << YAML::Key << "spacing_m" << YAML::Value << *s.bs_spacing_m;
        out << YAML::EndMap;
        out << YAML::Key << "irs" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "count_y" << YAML::Value << s.irs_count_y;
        out << YAML::Key << "count_z" << YAML::Value << s.irs_count_z;
        emit_vec3(out, "center_m", s.irs_center);
        out << YAML::Key << "spacing_m" << YAML::Value << s.irs_spacing_m;
        if (s.irs_normal)
            emit_vec3(out, "normal", *s.irs_normal);
        else
            out << YAML::Key << "normal" << YAML::Value << "auto";
        out << YAML::EndMap;
        out << YAML::Key << "num_users" << YAML::Value << s.num_users;
        out << YAML::Key << "theta_max_deg" << YAML::Value << s.theta_max_deg;
        out << YAML::Key << "directivity_p" << YAML::Value << s.directivity_bs;
        out << YAML::Key << "directivity_p_irs" << YAML::Value << s.directivity_irs;
        out << YAML::Key << "num_direct_scatterers" << YAML::Value << s.num_direct_scatterers;
        out << YAML::Key << "num_irs_scatterers" << YAML::Value << s.num_irs_scatterers;
        out << YAML::Key << "scatterer_exclusion_m" << YAML::Value << s.scatterer_exclusion_m;
        out << YAML::Key << "user_region" << YAML::Value << YAML::BeginMap;
        emit_interval(out, "x_range_m", s.user_region.x);
        emit_interval(out, "y_range_m", s.user_region.y);
        out << YAML::Key << "z_m" << YAML::Value << s.user_region.z;
        out << YAML::EndMap;
        emit_box(out, "direct_scatterer_box", s.direct_scatterer_box);
        emit_box(out, "irs_scatterer_box", s.irs_scatterer_box);
        out << YAML::Key << "seed" << YAML::Value << s.seed;
        out << YAML::EndMap;

        out << YAML::Key << "optimizer" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "outer_tol_bpshz" << YAML::Value << o.outer_tol;
        out << YAML::Key << "outer_max_iters" << YAML::Value << o.outer_max;
        out << YAML::Key << "restarts" << YAML::Value << o.restarts;
        out << YAML::Key << "phase_init" << YAML::Value << (o.phase_init == PhaseInit::Ones ? "ones" : "random");
        out << YAML::Key << "phase_init_seed" << YAML::Value << o.phase_init_seed;
        out << YAML::Key << "pga" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "max_iters" << YAML::Value << o.pga.max_iters;
        out << YAML::Key << "armijo_c1" << YAML::Value << o.pga.armijo_c1;
        out << YAML::Key << "armijo_shrink" << YAML::Value << o.pga.armijo_shrink;
        out << YAML::Key << "initial_step_rad" << YAML::Value << o.pga.initial_step;
        out << YAML::Key << "max_backtracks" << YAML::Value << o.pga.max_backtracks;
        out << YAML::Key << "grad_tol" << YAML::Value << o.pga.grad_tol;
        out << YAML::EndMap;
        out << YAML::Key << "fp" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "outer_rounds" << YAML::Value << o.fp.outer_rounds;
        out << YAML::Key << "tol_bpshz" << YAML::Value << o.fp.tol;
        out << YAML::EndMap;
        out << YAML::Key << "rcg" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "max_iters" << YAML::Value << o.rcg.max_iters;
        out << YAML::Key << "grad_tol" << YAML::Value << o.rcg.grad_tol;
        out << YAML::Key << "armijo_c1" << YAML::Value << o.rcg.armijo_c1;
        out << YAML::Key << "armijo_shrink" << YAML::Value << o.rcg.armijo_shrink;
        out << YAML::Key << "initial_step_rad" << YAML::Value << o.rcg.initial_step;
        out << YAML::Key << "max_backtracks" << YAML::Value << o.rcg.max_backtracks;
        out << YAML::Key << "positivity_floor" << YAML::Value << o.rcg.positivity_floor;
        out << YAML::EndMap;
        out << YAML::EndMap;

        if (cfg.sweep)
        {
            const SweepSpec &sw = *cfg.sweep;
            out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "variable" << YAML::Value << std::string(to_string(sw.variable));
            out << YAML::Key << "values" << YAML::Value << YAML::Flow << sw.values;
            out << YAML::Key << "schemes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (Scheme sc : sw.schemes)
                out << std::string(to_string(sc));
            out << YAML::EndSeq;
            out << YAML::Key << "num_seeds" << YAML::Value << sw.num_seeds;
            out << YAML::Key << "first_seed" << YAML::Value << sw.first_seed;
            out << YAML::EndMap;
        }

        out << YAML::Key << "check_grad" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "num_states" << YAML::Value << cfg.check_grad.num_states;
        out << YAML::Key << "fd_step" << YAML::Value << cfg.check_grad.fd_step;
        out << YAML::Key << "boundary_margin_rad" << YAML::Value << cfg.check_grad.boundary_margin_rad;
        out << YAML::Key << "rotation_tol" << YAML::Value << cfg.check_grad.rotation_tol;
        out << YAML::Key << "phase_tol" << YAML::Value << cfg.check_grad.phase_tol;
        out << YAML::EndMap;

        out << YAML::EndMap;
        return std::string(out.c_str()) + "\n";
    }
}
