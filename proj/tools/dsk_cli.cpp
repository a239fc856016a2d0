// SPDX-License-Identifier: Apache-2.0
//
// dsklink: link-level simulator for differential space-shift keying over distributed arrays
// Copyright (C) 2026 The dsklink authors
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

// Command-line front end: coherence, sweep, rsu, preset <name>, validate.
// Exit codes: 0 success, 1 configuration or usage error, 2 numeric or validation failure.

#include "dsk/config.hpp"
#include "dsk/errors.hpp"
#include "dsk/presets.hpp"
#include "dsk/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <unistd.h>

namespace
{
    bool use_color()
    {
        const char *nc = std::getenv("NO_COLOR");
        if (nc && *nc)
            return false;
        return isatty(STDOUT_FILENO) != 0;
    }

    void report(const dsk::RunOutput &out, bool json)
    {
        if (json)
        {
            nlohmann::json j{{"name", out.name},
                             {"csv", out.csv.string()},
                             {"meta", out.meta.string()},
                             {"rows", out.rows},
                             {"wall_seconds", out.wall_seconds}};
            std::cout << j.dump(2) << '\n';
        }
        else
        {
            std::cout << "wrote " << out.csv.string() << " (" << out.rows << " rows) and " << out.meta.string()
                      << '\n';
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Differential space-shift keying link simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
    bool json = false;

    app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "override a config key, e.g. --set circular.M=8");
    app.add_option("--seed", seed, "master RNG seed");
    app.add_option("--trials", trials, "Monte Carlo trials per grid point");
    app.add_option("--out", out, "output directory");
    app.add_option("--workers", workers, "worker threads (0 = all cores)");
    app.add_flag("--json", json, "machine-readable output");

    // Global options may follow the subcommand; set before the subcommands so they inherit it.
    app.fallthrough();

    auto *coherence = app.add_subcommand("coherence", "coherence functions over a t_c grid");
    auto *sweep = app.add_subcommand("sweep", "circular-cell SER sweep");
    auto *rsu = app.add_subcommand("rsu", "RSU highway drive sweep");
    auto *preset = app.add_subcommand("preset", "run a named experiment preset");
    std::string preset_name;
    preset->add_option("name", preset_name, "preset name")->required();
    auto *list = app.add_subcommand("presets", "list preset names");
    auto *validate = app.add_subcommand("validate", "run the fast invariant suite");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        dsk::RunSettings settings{seed, trials, out, workers};

        if (*list)
        {
            for (const auto &p : dsk::preset_list())
                std::cout << p.name << "  " << p.description << '\n';
            return 0;
        }
        if (*preset)
        {
            if (!config_path.empty() || !overrides.empty())
                throw dsk::ConfigError("preset runs take only --seed, --trials, --out and --workers");
            report(dsk::run_preset(preset_name, settings), json);
            return 0;
        }

        dsk::ExperimentConfig cfg = config_path.empty() ? dsk::ExperimentConfig{} : dsk::parse_config_file(config_path);
        dsk::apply_overrides(cfg, overrides);
        settings.apply(cfg);

        if (*validate)
        {
            auto checks = dsk::validate(cfg);
            if (json)
                std::cout << dsk::report_json(checks) << '\n';
            else
                dsk::print_report(std::cout, checks, use_color());
            for (const auto &c : checks)
                if (!c.passed)
                    return 2;
            return 0;
        }
        if (*coherence)
            report(dsk::run_coherence(cfg), json);
        else if (*sweep)
            report(dsk::run_sweep(cfg), json);
        else if (*rsu)
            report(dsk::run_rsu(cfg), json);
        return 0;
    }
    catch (const dsk::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        if (std::string(e.what()).find("unknown preset") != std::string::npos)
            std::cerr << app.help() << '\n';
        return 1;
    }
    catch (const dsk::InvalidArgument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 2;
    }
}
