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

#include "dsk/waveform.hpp"
#include "dsk/errors.hpp"
#include "dsk/geometry.hpp"

#include <cmath>
#include <string>

namespace dsk
{
    double sinc(double x)
    {
        if (std::abs(x) < 1e-8)
            return 1.0 - x * x / 6.0;
        return std::sin(x) / x;
    }

    void sinc_pi_row(double x, long k0, std::span<double> out)
    {
        // sin(pi (x + k)) = (-1)^k sin(pi x); reduce x first so the sine argument is small.
        double n = std::nearbyint(x);
        double f = x - n;
        double s = std::sin(kPi * f);
        bool odd = (static_cast<long long>(n) + k0) & 1LL;
        double sk = odd ? -s : s;
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            double arg = f + double(static_cast<long long>(n) + k0 + long(i));
            out[i] = std::abs(arg) < 1e-12 ? 1.0 : sk / (kPi * arg);
            sk = -sk;
        }
    }

    double SincPulse::operator()(double t) const { return sinc(kPi * t * bandwidth); }

    double kernel(const SincPulse &pulse, double delta) { return pulse.period() * sinc(kPi * pulse.bandwidth * delta); }

    SampleGrid::SampleGrid(const SincPulse &pulse, GridSpec spec) : pulse_(pulse), spec_(spec)
    {
        if (!(pulse.bandwidth > 0.0))
            throw InvalidArgument("pulse bandwidth must be positive");
        if (spec.oversampling < 2)
            throw InvalidArgument("oversampling must be >= 2");
        if (spec.half_width < 8)
            throw InvalidArgument("window half-width must be >= 8 symbol periods");
        samples_.assign(std::size_t(2 * spec.half_width * spec.oversampling + 1), cplx{});
    }

    double SampleGrid::time(std::size_t k) const
    {
        long c = long(spec_.half_width) * spec_.oversampling;
        return double(long(k) - c) * sample_period();
    }

    double SampleGrid::energy() const
    {
        double e = 0.0;
        for (const auto &s : samples_)
            e += std::norm(s);
        return e * sample_period();
    }

    bool SampleGrid::compatible(const SampleGrid &o) const
    {
        return pulse_.bandwidth == o.pulse_.bandwidth && spec_.oversampling == o.spec_.oversampling &&
               spec_.half_width == o.spec_.half_width;
    }

    namespace
    {
        template <class PhaseAt>
        SampleGrid synthesize_impl(const SincPulse &pulse, double rho, double tau, double f_c, GridSpec spec,
                                   PhaseAt phase_at)
        {
            SampleGrid g(pulse, spec);
            if (std::abs(tau) > 0.5 * g.half_span())
                throw DelayOutOfWindow("delay " + std::to_string(tau) + " s exceeds half the window");
            double carrier = -kTwoPi * std::fmod(f_c * tau, 1.0);
            cplx a = rho * std::polar(1.0, carrier);
            auto &x = g.samples();
            for (std::size_t k = 0; k < x.size(); ++k)
            {
                double t = g.time(k);
                x[k] = a * std::polar(1.0, phase_at(k, t)) * pulse(t - tau);
            }
            return g;
        }
    }

    SampleGrid synthesize(const SincPulse &pulse, double rho, double tau, double f_c, double freq_offset, GridSpec spec)
    {
        return synthesize_impl(pulse, rho, tau, f_c, spec,
                               [&](std::size_t, double t) { return -kTwoPi * freq_offset * t; });
    }

    SampleGrid synthesize(const SincPulse &pulse, double rho, double tau, double f_c, std::span<const double> phase,
                          GridSpec spec)
    {
        std::size_t n = std::size_t(2 * spec.half_width * spec.oversampling + 1);
        if (phase.size() != n)
            throw InvalidArgument("phase path has " + std::to_string(phase.size()) + " samples, grid needs " +
                                  std::to_string(n));
        return synthesize_impl(pulse, rho, tau, f_c, spec, [&](std::size_t k, double) { return phase[k]; });
    }

    void add_noise(SampleGrid &grid, double sigma2, RandomStream &rng)
    {
        for (auto &s : grid.samples())
            s += rng.complex_normal(sigma2);
    }

    CrossCorrelator::CrossCorrelator(const SampleGrid &a, const SampleGrid &b)
    {
        if (!a.compatible(b))
            throw InvalidArgument("cross_correlate: grids differ in rate or span");
        dt_ = a.sample_period();
        max_shift_ = a.half_span();
        const auto &x = a.samples();
        const auto &y = b.samples();
        long n = long(x.size());
        lag0_ = n - 1;
        lags_.assign(std::size_t(2 * n - 1), cplx{});
        for (long d = -(n - 1); d <= n - 1; ++d)
        {
            long lo = std::max(0L, -d);
            long hi = std::min(n, n - d);
            double re = 0.0, im = 0.0;
            for (long i = lo; i < hi; ++i)
            {
                // x_i conj(y_{i+d})
                const cplx &p = x[std::size_t(i)];
                const cplx &q = y[std::size_t(i + d)];
                re += p.real() * q.real() + p.imag() * q.imag();
                im += p.imag() * q.real() - p.real() * q.imag();
            }
            lags_[std::size_t(lag0_ + d)] = {re, im};
        }
    }

    cplx CrossCorrelator::at(double shift) const
    {
        if (!(std::abs(shift) <= max_shift_))
            throw InvalidArgument("cross_correlate: shift outside the grid span");
        // a(t_k - s) = sum_n a_n sinc(pi (k - n - s/dt)); collecting d = k - n gives sum_d sinc(pi (d - s/dt)) lag_d.
        std::vector<double> w(lags_.size());
        sinc_pi_row(-shift / dt_, -lag0_, w);
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < lags_.size(); ++i)
        {
            re += w[i] * lags_[i].real();
            im += w[i] * lags_[i].imag();
        }
        return cplx{re, im} * dt_;
    }

    cplx cross_correlate(const SampleGrid &a, const SampleGrid &b, double shift)
    {
        return CrossCorrelator(a, b).at(shift);
    }
}
