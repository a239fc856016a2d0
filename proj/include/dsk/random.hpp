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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dsk
{
    using cplx = std::complex<double>;

    std::uint64_t splitmix64(std::uint64_t x);

    // Derives an independent stream seed from a master seed and a path of counters.
    // The same (seed, path) always yields the same stream, regardless of call order.
    std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    // Stream labels used with derive_seed.
    namespace stream
    {
        inline constexpr std::uint64_t kTrial = 0x7472;
        inline constexpr std::uint64_t kSymbols = 0x7379;
        inline constexpr std::uint64_t kThermal = 0x7468;
        inline constexpr std::uint64_t kPhase = 0x7068;
        inline constexpr std::uint64_t kOracle = 0x6f72;
    }

    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
        RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
            : engine_(derive_seed(seed, path)) {}

        double normal() { return normal_(engine_); }
        double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
        std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

        // CN(0, var): real and imaginary parts each N(0, var/2).
        cplx complex_normal(double var)
        {
            double s = std::sqrt(0.5 * var);
            double re = normal();
            double im = normal();
            return {s * re, s * im};
        }

        std::mt19937_64 &engine() { return engine_; }

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_;
    };
}
