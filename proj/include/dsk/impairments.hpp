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

#include "dsk/geometry.hpp"
#include "dsk/random.hpp"

#include <cstddef>
#include <vector>

namespace dsk
{
    double db_to_linear(double db);
    double linear_to_db(double x);
    double dbm_to_watts(double dbm);
    double watts_to_dbm(double w);

    // Common-phase-error random walk. The state is kept unwrapped.
    struct WienerPhase
    {
        double sigma_df = 0.0;       // Hz
        double symbol_period = 1e-6; // s
        double state = 0.0;          // rad
    };

    // Per-symbol increment standard deviation. The only place the linewidth-to-increment mapping lives.
    double wiener_increment_std(double sigma_df, double symbol_period);

    WienerPhase wiener_step(const WienerPhase &p, double gaussian_draw);

    struct FreqOffsetPair
    {
        double df = 0.0;       // before displacement, Hz
        double df_prime = 0.0; // after displacement, Hz

        double mismatch() const;
        bool within_band(double bandwidth) const;
    };

    struct LinkBudget
    {
        double p_tx = 1e-3;     // W
        double f_c = 30e9;      // Hz
        double noise_var = 1e-12; // W
        double c = kSpeedOfLight;

        double wavelength() const { return c / f_c; }
    };

    // Free-space amplitude gain lambda / (4 pi d).
    double free_space_gain(double d, double lambda);

    struct SnrReport
    {
        double per_antenna = 0.0; // linear
        double per_antenna_db = 0.0;
        double array_db = 0.0; // per_antenna_db + 10 log10 N
    };

    SnrReport snr(const LinkBudget &budget, double d, std::size_t n_antennas);

    cplx awgn(double sigma2, RandomStream &rng);
    std::vector<cplx> awgn(double sigma2, RandomStream &rng, std::size_t count);
}
