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

#include "dsk/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace dsk
{
    namespace
    {
        GaussLegendreRule make_rule(int n)
        {
            constexpr double pi = 3.14159265358979323846;
            GaussLegendreRule r;
            r.nodes.resize(std::size_t(n));
            r.weights.resize(std::size_t(n));
            for (int i = 0; i < (n + 1) / 2; ++i)
            {
                double x = std::cos(pi * (i + 0.75) / (n + 0.5));
                double dp = 1.0;
                for (int it = 0; it < 100; ++it)
                {
                    double p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k)
                    {
                        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    // P_n = p1, P_{n-1} = p0
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16)
                        break;
                }
                double w = 2.0 / ((1.0 - x * x) * dp * dp);
                r.nodes[std::size_t(i)] = -x;
                r.nodes[std::size_t(n - 1 - i)] = x;
                r.weights[std::size_t(i)] = w;
                r.weights[std::size_t(n - 1 - i)] = w;
            }
            return r;
        }
    }

    const GaussLegendreRule &gauss_legendre(int n)
    {
        if (n < 1)
            throw InvalidArgument("Gauss-Legendre rule needs at least one node");
        static std::mutex mu;
        static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto &slot = cache[n];
        if (!slot)
            slot = std::make_unique<GaussLegendreRule>(make_rule(n));
        return *slot;
    }
}
