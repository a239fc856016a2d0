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

#include <ostream>
#include <string>
#include <vector>

namespace dsk
{
    struct CheckResult
    {
        std::string name;
        bool passed = false;
        double value = 0.0;
        double expected = 0.0;
        double tolerance = 0.0;
        std::string detail;
    };

    // Fast invariant suite. Uses cfg.c, so a tampered propagation speed shows up as a failure.
    std::vector<CheckResult> validate(const ExperimentConfig &cfg);

    void print_report(std::ostream &os, const std::vector<CheckResult> &checks, bool color);
    std::string report_json(const std::vector<CheckResult> &checks);
}
