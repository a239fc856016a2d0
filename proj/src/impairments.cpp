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

#include "dsk/impairments.hpp"
#include "dsk/errors.hpp"

#include <cmath>
#include <limits>

namespace dsk
{
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    double linear_to_db(double x)
    {
        if (x <= 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(x);
    }

    double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

    double watts_to_dbm(double w) { return linear_to_db(w / 1e-3); }

    double wiener_increment_std(double sigma_df, double symbol_period) { return kTwoPi * sigma_df * symbol_period; }

    WienerPhase wiener_step(const WienerPhase &p, double gaussian_draw)
    {
        WienerPhase next = p;
        next.state += wiener_increment_std(p.sigma_df, p.symbol_period) * gaussian_draw;
        return next;
    }

    double FreqOffsetPair::mismatch() const { return std::abs(df - df_prime); }

    bool FreqOffsetPair::within_band(double bandwidth) const { return mismatch() < bandwidth; }

    double free_space_gain(double d, double lambda)
    {
        if (!(d > 0.0))
            throw InvalidArgument("free_space_gain: distance must be positive");
        return lambda / (4.0 * kPi * d);
    }

    SnrReport snr(const LinkBudget &budget, double d, std::size_t n_antennas)
    {
        if (n_antennas < 1)
            throw InvalidArgument("snr: need at least one antenna");
        double a = free_space_gain(d, budget.wavelength());
        SnrReport r;
        r.per_antenna = budget.p_tx * a * a / budget.noise_var;
        r.per_antenna_db = linear_to_db(r.per_antenna);
        r.array_db = r.per_antenna_db + 10.0 * std::log10(double(n_antennas));
        return r;
    }

    cplx awgn(double sigma2, RandomStream &rng)
    {
        if (!(sigma2 >= 0.0))
            throw InvalidArgument("awgn: variance must be >= 0");
        return rng.complex_normal(sigma2);
    }

    std::vector<cplx> awgn(double sigma2, RandomStream &rng, std::size_t count)
    {
        std::vector<cplx> w(count);
        for (auto &x : w)
            x = awgn(sigma2, rng);
        return w;
    }
}
