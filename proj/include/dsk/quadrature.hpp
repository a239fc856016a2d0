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

#include "dsk/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace dsk
{
    struct GaussLegendreRule
    {
        std::vector<double> nodes;   // on [-1, 1]
        std::vector<double> weights;
    };

    // n-point rule by Newton iteration on P_n. Cached; safe to call concurrently.
    const GaussLegendreRule &gauss_legendre(int n);

    struct QuadratureResult
    {
        double value = 0.0;
        int panels = 0;
        int doublings = 0;
    };

    // Composite Gauss-Legendre over [a, b]. The panel count doubles until two successive
    // estimates differ by at most rel_tol times the integral of |f|.
    template <class F>
    QuadratureResult integrate_adaptive(F &&f, double a, double b, int node_count, double rel_tol,
                                        int max_doublings = 20)
    {
        const auto &rule = gauss_legendre(node_count);
        auto estimate = [&](int panels, double &abs_out) {
            double h = (b - a) / panels;
            double sum = 0.0, abs_sum = 0.0;
            for (int p = 0; p < panels; ++p)
            {
                double mid = a + (p + 0.5) * h;
                for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                {
                    double v = f(mid + 0.5 * h * rule.nodes[k]);
                    sum += rule.weights[k] * v;
                    abs_sum += rule.weights[k] * std::abs(v);
                }
            }
            abs_out = 0.5 * h * abs_sum;
            return 0.5 * h * sum;
        };
        double scale = 0.0;
        double prev = estimate(1, scale);
        for (int k = 1; k <= max_doublings; ++k)
        {
            int panels = 1 << k;
            double cur = estimate(panels, scale);
            if (std::abs(cur - prev) <= rel_tol * scale)
                return {cur, panels, k};
            prev = cur;
        }
        throw NumericFailure("quadrature did not converge after " + std::to_string(max_doublings) +
                             " doublings (last estimate " + std::to_string(prev) + ")");
    }

    // Trapezoid rule for a 2pi-periodic integrand, doubling the node count from n0.
    // Returns the mean value (1/2pi) * integral.
    template <class F>
    QuadratureResult periodic_mean(F &&f, int n0, double rel_tol, int max_doublings = 20)
    {
        constexpr double two_pi = 6.283185307179586476925;
        auto mean = [&](int n, double &abs_out) {
            double s = 0.0, sa = 0.0;
            for (int k = 0; k < n; ++k)
            {
                double v = f(two_pi * (k + 0.5) / n);
                s += v;
                sa += std::abs(v);
            }
            abs_out = sa / n;
            return s / n;
        };
        double scale = 0.0;
        double prev = mean(n0, scale);
        for (int k = 1; k <= max_doublings; ++k)
        {
            int n = n0 << k;
            double cur = mean(n, scale);
            if (std::abs(cur - prev) <= rel_tol * scale)
                return {cur, n, k};
            prev = cur;
        }
        throw NumericFailure("periodic quadrature did not converge after " + std::to_string(max_doublings) +
                             " doublings");
    }
}
