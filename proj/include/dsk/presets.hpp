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

#pragma once

#include "dsk/config.hpp"
#include "dsk/statistics.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dsk
{
    // Values given on the command line; they override the config.
    struct RunSettings
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<std::string> output;
        std::optional<unsigned> workers;

        void apply(ExperimentConfig &cfg) const;
    };

    struct PresetInfo
    {
        std::string name;
        std::string description;
    };

    const std::vector<PresetInfo> &preset_list();

    // Default configuration of a preset before command-line settings are applied.
    ExperimentConfig preset_config(const std::string &name);

    struct CoherenceRow
    {
        double t_c = 0.0;
        double j_cct = 0.0;
        double j_dct_exact = 0.0;
        double j_dct_bound = 0.0;
    };

    std::vector<CoherenceRow> coherence_curves(const ExperimentConfig &cfg);

    void write_ser_csv(std::ostream &os, const SerCurve &curve, std::uint64_t seed, const std::string &hash);
    void write_coherence_csv(std::ostream &os, const std::vector<CoherenceRow> &rows);

    struct RunOutput
    {
        std::string name;
        std::filesystem::path csv;
        std::filesystem::path meta;
        std::size_t rows = 0;
        double wall_seconds = 0.0;
    };

    // Subcommand bodies. Each writes <name>.csv and <name>.meta into cfg.output.
    RunOutput run_coherence(const ExperimentConfig &cfg, const std::string &name = "coherence");
    RunOutput run_sweep(const ExperimentConfig &cfg, const std::string &name = "sweep");
    RunOutput run_rsu(const ExperimentConfig &cfg, const std::string &name = "rsu");

    // Throws ConfigError listing the valid names when `name` is unknown.
    RunOutput run_preset(const std::string &name, const RunSettings &settings);

    // Build identifier recorded in .meta files.
    std::string build_describe();
}
