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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace dsk
{
    struct ConfidenceInterval
    {
        double low = 0.0;
        double high = 0.0;
        bool low_count = false; // fewer than 20 errors; Wilson interval used
    };

    // 95% interval on errors/trials: Wilson below 20 errors, normal approximation otherwise.
    ConfidenceInterval ser_interval(std::size_t errors, std::size_t trials);

    struct SerPoint
    {
        double x = 0.0;
        std::string detector;
        std::size_t trials = 0;
        std::size_t errors = 0;
        double ser = 0.0;
        double ci_low = 0.0;
        double ci_high = 0.0;
        double overhead = 0.0; // NaN when not applicable
        double mean_snr_db = 0.0;
        bool low_count = false;
    };

    SerPoint make_ser_point(double x, std::string detector, std::size_t errors, std::size_t trials, double overhead,
                            double mean_snr_db);

    struct SerCurve
    {
        std::string variable;
        std::vector<SerPoint> points;

        // Points of one detector in grid order.
        std::vector<SerPoint> series(const std::string &detector) const;
    };

    // 0 maps to the hardware concurrency (at least 1).
    unsigned resolve_workers(unsigned requested);

    // Runs body(i) for i in [0, count) on `workers` threads. Each index must write only its own
    // output slot; the first exception thrown by any body is rethrown after all threads join.
    void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body);
}
