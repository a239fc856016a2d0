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

#include "dsk/random.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dsk
{
    // sin(x)/x with sinc(0) = 1.
    double sinc(double x);

    // out[i] = sinc(pi (x + k0 + i)) for i in [0, out.size()). One sine evaluation per call.
    void sinc_pi_row(double x, long k0, std::span<double> out);

    // Unit-amplitude ideal low-pass pulse s(t) = sinc(pi t / T), T = 1/B.
    struct SincPulse
    {
        double bandwidth = 100e6;

        double period() const { return 1.0 / bandwidth; }
        double energy() const { return period(); }
        double operator()(double t) const;
    };

    // T sinc(pi B delta): the autocorrelation of the pulse at lag delta.
    double kernel(const SincPulse &pulse, double delta);

    struct GridSpec
    {
        int oversampling = 16; // kappa >= 2
        int half_width = 64;   // W >= 8, in symbol periods
    };

    // Complex baseband samples at t_k = (k - W kappa) / (kappa B), k = 0 .. 2 W kappa.
    class SampleGrid
    {
    public:
        SampleGrid(const SincPulse &pulse, GridSpec spec);

        const SincPulse &pulse() const { return pulse_; }
        GridSpec spec() const { return spec_; }
        double sample_rate() const { return spec_.oversampling * pulse_.bandwidth; }
        double sample_period() const { return 1.0 / sample_rate(); }
        double half_span() const { return spec_.half_width * pulse_.period(); }
        std::size_t size() const { return samples_.size(); }
        double time(std::size_t k) const;

        std::vector<cplx> &samples() { return samples_; }
        const std::vector<cplx> &samples() const { return samples_; }

        // Delta t * sum |x_k|^2.
        double energy() const;

        bool compatible(const SampleGrid &o) const;

    private:
        SincPulse pulse_;
        GridSpec spec_;
        std::vector<cplx> samples_;
    };

    // rho e^{-j 2 pi f_c tau} e^{j theta(t_k)} sinc(pi (t_k - tau) / T) with theta(t) = -2 pi df t.
    SampleGrid synthesize(const SincPulse &pulse, double rho, double tau, double f_c, double freq_offset,
                          GridSpec spec = {});

    // Same, with an explicit phase sample per grid point.
    SampleGrid synthesize(const SincPulse &pulse, double rho, double tau, double f_c, std::span<const double> phase,
                          GridSpec spec = {});

    // Adds CN(0, sigma2) to every sample; sigma2 is the per-sample noise power.
    void add_noise(SampleGrid &grid, double sigma2, RandomStream &rng);

    // Delta t sum_k a(t_k - shift) conj(b(t_k)), a interpolated with the band-limited kernel.
    // The lag sequence is computed once so repeated shifts are cheap.
    class CrossCorrelator
    {
    public:
        CrossCorrelator(const SampleGrid &a, const SampleGrid &b);
        cplx at(double shift) const;

    private:
        double dt_;
        double max_shift_;
        long lag0_;                 // index of lag 0 in lags_
        std::vector<cplx> lags_;    // lags_[lag0_ + d] = sum_n a_n conj(b_{n+d})
    };

    cplx cross_correlate(const SampleGrid &a, const SampleGrid &b, double shift);
}
