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

#include "dsk/scenarios.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dsk
{
    enum class ScenarioKind
    {
        circular,
        rsu,
        coherence
    };

    std::string to_string(ScenarioKind k);

    // Grid of coherence evaluations for one symmetric antenna pair.
    struct CoherenceCurveConfig
    {
        double distance = 100.0;
        double speed = 30.0 / 3.6;
        double f_c = 30e9;
        double bandwidth = 100e6;
        double l = 0.1;
        double theta = kPi / 4.0;
        double phi1 = 0.0;
        double phi2 = kPi;
        double t_min = 1e-6;
        double t_max = 8.0;
        std::size_t points = 41; // log-spaced in [t_min, t_max]
        int node_count = 16;
        double tolerance = 1e-8;

        void validate(double c) const;
    };

    struct ExperimentConfig
    {
        ScenarioKind kind = ScenarioKind::circular;
        std::uint64_t seed = 1;
        std::size_t trials = 10000;
        std::string output = ".";
        unsigned workers = 0;
        double c = kSpeedOfLight; // propagated to every module

        CircularCellConfig circular;
        SweepSpec sweep{SweepVariable::snr_db, {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, {}};

        RsuConfig rsu;
        RsuVariable rsu_variable = RsuVariable::t_upd;
        std::vector<double> rsu_grid{1e-5, 3.4e-5, 1.17e-4, 3.92e-4, 1.592e-3, 4.436e-3, 1.1421e-2, 3.9992e-2};
        double rsu_duration = 0.0; // <= 0: one segment

        CoherenceCurveConfig coherence;

        // Copies of the scenario configs with the shared speed of light applied.
        CircularCellConfig circular_config() const;
        RsuConfig rsu_config() const;

        void validate() const;
        bool operator==(const ExperimentConfig &o) const;
    };

    // INI text: "key = value" lines grouped under [section] headers. Bare keys before any section
    // resolve to the first section that defines them, in the order
    // experiment, physics, circular, sweep, rsu, coherence. Unknown keys are rejected.
    ExperimentConfig parse_config(const std::string &text, const std::string &origin = "<config>");
    ExperimentConfig parse_config_file(const std::string &path);

    // Applies "section.key=value" or "key=value" overrides in order.
    void apply_overrides(ExperimentConfig &cfg, const std::vector<std::string> &overrides);

    std::string serialize(const ExperimentConfig &cfg);

    // 16 hex digits of FNV-1a over serialize(cfg), ignoring workers and output.
    std::string config_hash(const ExperimentConfig &cfg);

    // %.17e, or "nan"/"inf".
    std::string format_number(double x);
}
