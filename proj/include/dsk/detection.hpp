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
#include "dsk/waveform.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace dsk
{
    // Known TDoA fingerprints of all M transmitters. Weights and shifts derive from them alone.
    class DskReference
    {
    public:
        explicit DskReference(std::vector<TdoaFingerprint> fingerprints);

        std::size_t transmitter_count() const { return fingerprints_.size(); }
        std::size_t antenna_count() const { return fingerprints_.front().antenna_count(); }
        const TdoaFingerprint &fingerprint(std::size_t m) const { return fingerprints_.at(m); }

        // tau^m_i - tau^m_j.
        double shift(std::size_t m, std::size_t i, std::size_t j) const;

        // e^{-j 2 pi f_c (tau^m_i - tau^m_j)}, unit modulus.
        cplx weight(std::size_t m, std::size_t i, std::size_t j) const;

    private:
        std::vector<TdoaFingerprint> fingerprints_;
    };

    struct CsiReference
    {
        std::vector<std::vector<cplx>> vectors; // one N-vector per transmitter
    };

    // Phase-only feature: unit-modulus ratios to the first antenna, scaled to unit l2 norm.
    class PhaseFeature
    {
    public:
        // Throws DegenerateReference when |h_0| < 1e-12 ||h||.
        static PhaseFeature from_vector(std::span<const cplx> h);

        const std::vector<cplx> &tail() const { return tail_; }

        // |<this, other>|.
        double similarity(const PhaseFeature &other) const;

    private:
        std::vector<cplx> tail_;
    };

    // Continuous-time observation on a symbol-timed window:
    //   r_n(t) = e^{j common_phase} (gains[n] s(t - delays[n]) + sum_{k=-K..K} noise[n][k+K] s(t - k T)).
    // The noise coefficients are Nyquist-rate samples of band-limited white noise; every
    // correlation integral is a finite kernel sum, so this path has no truncation error.
    // The common phase is kept symbolic: it cancels exactly in every pair correlation.
    struct AnalyticObservation
    {
        SincPulse pulse;
        int noise_half_width = 0; // K
        double common_phase = 0.0; // rad, shared by all antennas
        std::vector<cplx> gains;
        std::vector<double> delays; // relative to the window centre, seconds
        std::vector<std::vector<cplx>> noise;

        std::size_t antenna_count() const { return gains.size(); }
    };

    // Draws CN(0, sigma2) noise coefficients for every antenna.
    AnalyticObservation make_analytic_observation(const SincPulse &pulse, std::vector<cplx> gains,
                                                  std::vector<double> delays, double sigma2, int noise_half_width,
                                                  RandomStream &rng);

    struct SampledObservation
    {
        std::vector<SampleGrid> antennas;

        std::size_t antenna_count() const { return antennas.size(); }
    };

    using Observation = std::variant<AnalyticObservation, SampledObservation>;

    std::size_t antenna_count(const Observation &obs);

    // Multiplies the whole observation (signal and noise) of every antenna by e^{j theta}.
    // On the analytic path this adds theta to common_phase, so DSK statistics are bit-identical.
    void rotate(Observation &obs, double theta);

    // (1/E_s) int r_n(t) s(t) dt per antenna: the symbol-timed matched-filter output.
    std::vector<cplx> matched_filter_outputs(const Observation &obs);

    // Weighted pair terms w^m_ij int r_j(t - shift^m_ij) r_i^*(t) dt, ordered (1,0), (2,0), (2,1), (3,0), ...
    std::vector<cplx> dsk_pair_terms(const Observation &obs, const DskReference &ref, std::size_t m);

    double dsk_statistic(const Observation &obs, const DskReference &ref, std::size_t m);

    // Statistic for every candidate; pair correlations are prepared once.
    std::vector<double> dsk_statistics(const Observation &obs, const DskReference &ref);

    // argmax of dsk_statistic, lowest index on ties.
    std::size_t dsk_detect(const Observation &obs, const DskReference &ref);

    double dsk_statistic_magnitude(const Observation &obs, const DskReference &ref, std::size_t m);

    std::size_t dsk_detect_magnitude(const Observation &obs, const DskReference &ref);

    // Entrywise mean of the pilot vectors.
    std::vector<cplx> estimate_csi_reference(std::span<const std::vector<cplx>> pilots);

    PhaseFeature estimate_phase_feature(std::span<const std::vector<cplx>> pilots);

    // argmin_m ||y - h_m||^2, lowest index on ties.
    std::size_t ssk_detect(std::span<const cplx> y, const CsiReference &ref);

    struct FeatureDecision
    {
        std::size_t index = 0;
        bool erasure = false; // observation was degenerate; index drawn uniformly
    };

    FeatureDecision dsk_detect_feature(std::span<const cplx> y, std::span<const PhaseFeature> features,
                                       RandomStream &rng);
}
