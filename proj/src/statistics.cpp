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

#include "dsk/statistics.hpp"
#include "dsk/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace dsk
{
    ConfidenceInterval ser_interval(std::size_t errors, std::size_t trials)
    {
        if (trials == 0)
            throw InvalidArgument("ser_interval needs at least one trial");
        constexpr double z = 1.959963984540054;
        double n = double(trials);
        double p = double(errors) / n;
        ConfidenceInterval ci;
        if (errors < 20)
        {
            double z2 = z * z;
            double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
            double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
            ci.low = errors == 0 ? 0.0 : std::max(0.0, centre - half);
            ci.high = errors == trials ? 1.0 : std::min(1.0, centre + half);
            ci.low_count = true;
        }
        else
        {
            double half = z * std::sqrt(p * (1.0 - p) / n);
            ci.low = std::max(0.0, p - half);
            ci.high = std::min(1.0, p + half);
        }
        return ci;
    }

    SerPoint make_ser_point(double x, std::string detector, std::size_t errors, std::size_t trials, double overhead,
                            double mean_snr_db)
    {
        SerPoint p;
        p.x = x;
        p.detector = std::move(detector);
        p.trials = trials;
        p.errors = errors;
        p.ser = double(errors) / double(trials);
        auto ci = ser_interval(errors, trials);
        p.ci_low = ci.low;
        p.ci_high = ci.high;
        p.low_count = ci.low_count;
        p.overhead = overhead;
        p.mean_snr_db = mean_snr_db;
        return p;
    }

    std::vector<SerPoint> SerCurve::series(const std::string &detector) const
    {
        std::vector<SerPoint> out;
        for (const auto &p : points)
            if (p.detector == detector)
                out.push_back(p);
        return out;
    }

    unsigned resolve_workers(unsigned requested)
    {
        if (requested > 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body)
    {
        workers = std::max(1u, std::min<unsigned>(resolve_workers(workers), unsigned(std::max<std::size_t>(count, 1))));
        if (workers == 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex mu;
        auto run = [&] {
            for (;;)
            {
                std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}
