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

#include "dsk/detection.hpp"
#include "dsk/errors.hpp"

#include <cmath>
#include <string>

namespace dsk
{
    DskReference::DskReference(std::vector<TdoaFingerprint> fingerprints) : fingerprints_(std::move(fingerprints))
    {
        if (fingerprints_.empty())
            throw InvalidArgument("DskReference needs at least one fingerprint");
        for (const auto &f : fingerprints_)
            if (f.antenna_count() != fingerprints_.front().antenna_count())
                throw InvalidArgument("DskReference fingerprints disagree on antenna count");
    }

    double DskReference::shift(std::size_t m, std::size_t i, std::size_t j) const
    {
        return fingerprints_.at(m).pair_delay(i, j);
    }

    cplx DskReference::weight(std::size_t m, std::size_t i, std::size_t j) const
    {
        const auto &f = fingerprints_.at(m);
        return std::polar(1.0, -kTwoPi * f.carrier() * f.pair_delay(i, j));
    }

    PhaseFeature PhaseFeature::from_vector(std::span<const cplx> h)
    {
        if (h.size() < 2)
            throw InvalidArgument("phase feature needs at least 2 antennas");
        double total = 0.0;
        for (const auto &x : h)
            total += std::norm(x);
        double h0 = std::abs(h[0]);
        if (!(h0 >= 1e-12 * std::sqrt(total)) || h0 == 0.0)
            throw DegenerateReference("first-antenna entry is numerically zero");
        PhaseFeature f;
        f.tail_.resize(h.size() - 1);
        double scale = 1.0 / std::sqrt(double(h.size() - 1));
        cplx ref = std::conj(h[0]) / h0;
        for (std::size_t k = 1; k < h.size(); ++k)
        {
            cplx r = h[k] * ref;
            double a = std::abs(r);
            // A null entry carries no phase; it contributes nothing to the inner product.
            f.tail_[k - 1] = a > 0.0 ? r * (scale / a) : cplx{};
        }
        return f;
    }

    double PhaseFeature::similarity(const PhaseFeature &other) const
    {
        if (other.tail_.size() != tail_.size())
            throw InvalidArgument("phase features differ in length");
        cplx s{};
        for (std::size_t k = 0; k < tail_.size(); ++k)
            s += tail_[k] * std::conj(other.tail_[k]);
        return std::abs(s);
    }

    AnalyticObservation make_analytic_observation(const SincPulse &pulse, std::vector<cplx> gains,
                                                  std::vector<double> delays, double sigma2, int noise_half_width,
                                                  RandomStream &rng)
    {
        if (gains.size() != delays.size())
            throw InvalidArgument("gains and delays differ in length");
        if (noise_half_width < 0)
            throw InvalidArgument("noise half-width must be >= 0");
        if (!(sigma2 >= 0.0))
            throw InvalidArgument("noise variance must be >= 0");
        AnalyticObservation o;
        o.pulse = pulse;
        o.noise_half_width = noise_half_width;
        o.gains = std::move(gains);
        o.delays = std::move(delays);
        o.noise.assign(o.gains.size(), std::vector<cplx>(std::size_t(2 * noise_half_width + 1)));
        if (sigma2 > 0.0)
            for (auto &w : o.noise)
                for (auto &x : w)
                    x = rng.complex_normal(sigma2);
        return o;
    }

    std::size_t antenna_count(const Observation &obs)
    {
        return std::visit([](const auto &o) { return o.antenna_count(); }, obs);
    }

    void rotate(Observation &obs, double theta)
    {
        if (auto *a = std::get_if<AnalyticObservation>(&obs))
        {
            a->common_phase += theta;
            return;
        }
        cplx r = std::polar(1.0, theta);
        for (auto &grid : std::get<SampledObservation>(obs).antennas)
            for (auto &x : grid.samples())
                x *= r;
    }

    std::vector<cplx> matched_filter_outputs(const Observation &obs)
    {
        std::vector<cplx> y(antenna_count(obs));
        if (const auto *a = std::get_if<AnalyticObservation>(&obs))
        {
            double T = a->pulse.period();
            cplx r = std::polar(1.0, a->common_phase);
            for (std::size_t n = 0; n < y.size(); ++n)
            {
                y[n] = a->gains[n] * sinc(kPi * a->delays[n] / T);
                if (!a->noise[n].empty())
                    y[n] += a->noise[n][std::size_t(a->noise_half_width)];
                y[n] *= r;
            }
        }
        else
        {
            const auto &s = std::get<SampledObservation>(obs);
            for (std::size_t n = 0; n < y.size(); ++n)
            {
                const auto &g = s.antennas[n];
                cplx acc{};
                for (std::size_t k = 0; k < g.size(); ++k)
                    acc += g.samples()[k] * g.pulse()(g.time(k));
                y[n] = acc * (g.sample_period() / g.pulse().energy());
            }
        }
        return y;
    }

    namespace
    {
        std::size_t pair_index(std::size_t i, std::size_t j) { return i * (i - 1) / 2 + j; }

        // Prepared pair correlations int r_j(t - shift) r_i^*(t) dt for all i > j.
        class PairBank
        {
        public:
            explicit PairBank(const Observation &obs)
            {
                std::size_t n = antenna_count(obs);
                if (const auto *a = std::get_if<AnalyticObservation>(&obs))
                {
                    analytic_ = a;
                    if (a->gains.size() != a->delays.size() || a->noise.size() != a->gains.size())
                        throw InternalConsistency("analytic observation has inconsistent antenna count");
                    int K = a->noise_half_width;
                    row_.resize(std::size_t(4 * K + 1));
                    nn_.resize(n * (n - 1) / 2);
                    for (std::size_t i = 1; i < n; ++i)
                        for (std::size_t j = 0; j < i; ++j)
                        {
                            // c_d = sum_k w_j[k] conj(w_i[k - d]), d in [-2K, 2K]
                            auto &c = nn_[pair_index(i, j)];
                            c.assign(std::size_t(4 * K + 1), cplx{});
                            const auto &wj = a->noise[j];
                            const auto &wi = a->noise[i];
                            for (int k = -K; k <= K; ++k)
                                for (int l = -K; l <= K; ++l)
                                    c[std::size_t(k - l + 2 * K)] +=
                                        wj[std::size_t(k + K)] * std::conj(wi[std::size_t(l + K)]);
                        }
                }
                else
                {
                    const auto &s = std::get<SampledObservation>(obs);
                    sampled_.reserve(n * (n - 1) / 2);
                    for (std::size_t i = 1; i < n; ++i)
                        for (std::size_t j = 0; j < i; ++j)
                            sampled_.emplace_back(s.antennas[j], s.antennas[i]);
                }
            }

            cplx correlate(std::size_t i, std::size_t j, double shift)
            {
                if (!analytic_)
                    return sampled_[pair_index(i, j)].at(shift);

                const auto &a = *analytic_;
                double T = a.pulse.period();
                int K = a.noise_half_width;
                std::size_t L = std::size_t(2 * K + 1);
                cplx out = a.gains[j] * std::conj(a.gains[i]) * sinc(kPi * (shift + a.delays[j] - a.delays[i]) / T);

                std::span<double> row(row_.data(), L);
                // signal j x noise i: sum_l conj(w_i[l]) sinc(pi ((shift + delta_j)/T - l)), row index r <-> l = K - r
                sinc_pi_row((shift + a.delays[j]) / T, -K, row);
                cplx sn{};
                for (std::size_t r = 0; r < L; ++r)
                    sn += std::conj(a.noise[i][L - 1 - r]) * row[r];
                out += a.gains[j] * sn;

                // noise j x signal i: sum_k w_j[k] sinc(pi ((shift - delta_i)/T + k)), row index r <-> k = r - K
                sinc_pi_row((shift - a.delays[i]) / T, -K, row);
                cplx ns{};
                for (std::size_t r = 0; r < L; ++r)
                    ns += a.noise[j][r] * row[r];
                out += std::conj(a.gains[i]) * ns;

                // noise x noise: sum_d c_d sinc(pi (shift/T + d))
                std::span<double> row2(row_.data(), row_.size());
                sinc_pi_row(shift / T, -2 * K, row2);
                const auto &c = nn_[pair_index(i, j)];
                cplx nn{};
                for (std::size_t r = 0; r < c.size(); ++r)
                    nn += c[r] * row2[r];
                out += nn;
                return out * T;
            }

        private:
            const AnalyticObservation *analytic_ = nullptr;
            std::vector<std::vector<cplx>> nn_;
            std::vector<double> row_;
            std::vector<CrossCorrelator> sampled_;
        };

        void check_compatible(const Observation &obs, const DskReference &ref)
        {
            std::size_t n = antenna_count(obs);
            if (n != ref.antenna_count())
                throw InternalConsistency("observation has " + std::to_string(n) + " antennas, reference has " +
                                          std::to_string(ref.antenna_count()));
            if (n < 2)
                throw InternalConsistency("observation needs at least two antennas");
        }

        void check_candidate(const DskReference &ref, std::size_t m)
        {
            if (m >= ref.transmitter_count())
                throw InvalidArgument("candidate index " + std::to_string(m) + " out of range");
        }

        double statistic(PairBank &bank, const DskReference &ref, std::size_t m, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 1; i < n; ++i)
            {
                double inner = 0.0;
                for (std::size_t j = 0; j < i; ++j)
                    inner += (ref.weight(m, i, j) * bank.correlate(i, j, ref.shift(m, i, j))).real();
                s += inner / double(i);
            }
            return s;
        }

        double magnitude(PairBank &bank, const DskReference &ref, std::size_t m, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 1; i < n; ++i)
            {
                double inner = 0.0;
                for (std::size_t j = 0; j < i; ++j)
                    inner += std::abs(bank.correlate(i, j, ref.shift(m, i, j)));
                s += inner / double(i);
            }
            return s;
        }

        std::size_t argmax(const std::vector<double> &v)
        {
            std::size_t best = 0;
            for (std::size_t m = 1; m < v.size(); ++m)
                if (v[m] > v[best])
                    best = m;
            return best;
        }
    }

    std::vector<cplx> dsk_pair_terms(const Observation &obs, const DskReference &ref, std::size_t m)
    {
        check_compatible(obs, ref);
        check_candidate(ref, m);
        PairBank bank(obs);
        std::size_t n = antenna_count(obs);
        std::vector<cplx> terms;
        terms.reserve(n * (n - 1) / 2);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                terms.push_back(ref.weight(m, i, j) * bank.correlate(i, j, ref.shift(m, i, j)));
        return terms;
    }

    double dsk_statistic(const Observation &obs, const DskReference &ref, std::size_t m)
    {
        check_compatible(obs, ref);
        check_candidate(ref, m);
        PairBank bank(obs);
        return statistic(bank, ref, m, antenna_count(obs));
    }

    std::vector<double> dsk_statistics(const Observation &obs, const DskReference &ref)
    {
        check_compatible(obs, ref);
        PairBank bank(obs);
        std::vector<double> s(ref.transmitter_count());
        for (std::size_t m = 0; m < s.size(); ++m)
            s[m] = statistic(bank, ref, m, antenna_count(obs));
        return s;
    }

    std::size_t dsk_detect(const Observation &obs, const DskReference &ref)
    {
        return argmax(dsk_statistics(obs, ref));
    }

    double dsk_statistic_magnitude(const Observation &obs, const DskReference &ref, std::size_t m)
    {
        check_compatible(obs, ref);
        check_candidate(ref, m);
        PairBank bank(obs);
        return magnitude(bank, ref, m, antenna_count(obs));
    }

    std::size_t dsk_detect_magnitude(const Observation &obs, const DskReference &ref)
    {
        check_compatible(obs, ref);
        PairBank bank(obs);
        std::vector<double> s(ref.transmitter_count());
        for (std::size_t m = 0; m < s.size(); ++m)
            s[m] = magnitude(bank, ref, m, antenna_count(obs));
        return argmax(s);
    }

    std::vector<cplx> estimate_csi_reference(std::span<const std::vector<cplx>> pilots)
    {
        if (pilots.empty())
            throw InvalidArgument("estimate_csi_reference: empty pilot set");
        std::vector<cplx> h(pilots.front().size());
        for (const auto &p : pilots)
        {
            if (p.size() != h.size())
                throw InvalidArgument("estimate_csi_reference: pilot vectors differ in length");
            for (std::size_t n = 0; n < h.size(); ++n)
                h[n] += p[n];
        }
        for (auto &x : h)
            x /= double(pilots.size());
        return h;
    }

    PhaseFeature estimate_phase_feature(std::span<const std::vector<cplx>> pilots)
    {
        auto h = estimate_csi_reference(pilots);
        return PhaseFeature::from_vector(h);
    }

    std::size_t ssk_detect(std::span<const cplx> y, const CsiReference &ref)
    {
        if (ref.vectors.empty())
            throw InvalidArgument("ssk_detect: no references");
        std::size_t best = 0;
        double best_d = 0.0;
        for (std::size_t m = 0; m < ref.vectors.size(); ++m)
        {
            const auto &h = ref.vectors[m];
            if (h.size() != y.size())
                throw InvalidArgument("ssk_detect: reference length mismatch");
            double d = 0.0;
            for (std::size_t n = 0; n < y.size(); ++n)
                d += std::norm(y[n] - h[n]);
            if (m == 0 || d < best_d)
            {
                best = m;
                best_d = d;
            }
        }
        return best;
    }

    FeatureDecision dsk_detect_feature(std::span<const cplx> y, std::span<const PhaseFeature> features,
                                       RandomStream &rng)
    {
        if (features.empty())
            throw InvalidArgument("dsk_detect_feature: no features");
        PhaseFeature obs;
        try
        {
            obs = PhaseFeature::from_vector(y);
        }
        catch (const DegenerateReference &)
        {
            return {rng.index(features.size()), true};
        }
        std::size_t best = 0;
        double best_s = -1.0;
        for (std::size_t m = 0; m < features.size(); ++m)
        {
            double s = obs.similarity(features[m]);
            if (s > best_s)
            {
                best = m;
                best_s = s;
            }
        }
        return {best, false};
    }
}
