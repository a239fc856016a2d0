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


#include <catch_amalgamated.hpp>

#include "dsk/detection.hpp"
#include "dsk/errors.hpp"
#include "dsk/geometry.hpp"
#include "dsk/impairments.hpp"
#include "dsk/scenarios.hpp"

#include <cmath>
#include <vector>

// Covered tests:
// - Noiseless pair-term identity and sidelobe bound for a wrong candidate
// - Decisions: noiseless correctness, ties, common-rotation invariance
// - Sampled path against the analytic path
// - Magnitude detector
// - Pilot averaging and phase features
// - SSK baseline and its ordering against DSK

using namespace dsk;
using Catch::Approx;

namespace
{
    const SincPulse kPulse{100e6};
    constexpr double kFc = 30e9;

    std::vector<double> delays_of(const TdoaFingerprint &fp)
    {
        std::vector<double> d(fp.antenna_count());
        for (std::size_t n = 0; n < d.size(); ++n)
            d[n] = fp.delay(n);
        return d;
    }

    // Noiseless analytic observation of a fingerprint with amplitude rho.
    AnalyticObservation clean(const TdoaFingerprint &fp, double rho, int K = 4)
    {
        RandomStream rng(0);
        auto d = delays_of(fp);
        std::vector<cplx> g(d.size());
        for (std::size_t n = 0; n < d.size(); ++n)
            g[n] = rho * std::polar(1.0, -kTwoPi * std::fmod(fp.carrier() * d[n], 1.0));
        return make_analytic_observation(kPulse, g, d, 0.0, K, rng);
    }

    CircularCell default_cell(std::size_t M = 4)
    {
        CircularCellConfig cfg;
        cfg.M = M;
        return build_circular_cell(cfg);
    }
}

TEST_CASE("Detection - noiseless true candidate gives (N-1) rho^2 E_s")
{
    CircularCell cell = default_cell();
    RandomStream rng(41);
    for (int trial = 0; trial < 20; ++trial)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        DskReference ref = cell.dsk_reference(arr);
        for (std::size_t v = 0; v < 4; ++v)
        {
            double rho = 0.3 + trial * 0.1;
            Observation obs = clean(ref.fingerprint(v), rho);
            double es = kPulse.energy();
            for (const auto &t : dsk_pair_terms(obs, ref, v))
            {
                CHECK(std::abs(t.real() / (rho * rho * es) - 1.0) <= 1e-9);
                CHECK(std::abs(t.imag()) <= 1e-9 * rho * rho * es);
            }
            CHECK(dsk_statistic(obs, ref, v) == Approx(6.0 * rho * rho * es).epsilon(1e-9));
        }
    }
}

TEST_CASE("Detection - wrong candidate separated by >= 5/B stays below 0.05 (N-1) rho^2 E_s")
{
    // Candidate 1 differs from the true candidate 0 by 6.5 T per antenna index, so every pair
    // mismatch is a multiple of 6.5 T.
    const std::size_t N = 5;
    double T = kPulse.period();
    MdArray arr = MdArray::uniform_circular({0, 0}, N, 0.1);
    TdoaFingerprint truth = fingerprint({70, 40}, arr, 3e8, kFc, 0);
    std::vector<double> shifted(truth.deltas());
    for (std::size_t k = 0; k < shifted.size(); ++k)
        shifted[k] += 6.5 * double(k + 1) * T;
    DskReference ref({truth, TdoaFingerprint(1, shifted, kFc)});

    double rho = 1.7;
    Observation obs = clean(truth, rho);
    double stat = dsk_statistic(obs, ref, 1);
    double bound = 0.05 * (N - 1) * rho * rho * kPulse.energy();
    CHECK(std::abs(stat) <= bound);

    // Triangle-inequality sidelobe oracle.
    double oracle = 0.0;
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = 0; j < i; ++j)
            oracle += rho * rho * std::abs(kernel(kPulse, 6.5 * double(i - j) * T)) / double(i);
    CHECK(std::abs(stat) <= oracle * (1 + 1e-12));
    CHECK(dsk_detect(obs, ref) == 0);
}

TEST_CASE("Detection - silent observation gives zero statistics and the lowest index")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({10, -20});
    DskReference ref = cell.dsk_reference(arr);
    Observation obs = clean(ref.fingerprint(2), 0.0);
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(dsk_statistic(obs, ref, m) == 0.0);
    CHECK(dsk_detect(obs, ref) == 0);
}

TEST_CASE("Detection - noiseless transmitter 3 of 4 is detected")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({-12.0, 33.0});
    RandomStream rng(1);
    Observation obs = cell.observe(arr, 2, 0.0, rng); // 0-based index of transmitter 3
    CHECK(dsk_detect(obs, cell.dsk_reference(arr)) == 2);
}

TEST_CASE("Detection - noiseless correctness over all transmitters and 100 placements")
{
    for (std::size_t M : {4u, 16u})
    {
        CircularCell cell = default_cell(M);
        RandomStream rng(42);
        std::size_t errors = 0;
        for (int p = 0; p < 100; ++p)
        {
            MdArray arr = cell.array_at(cell.sample_md_center(rng));
            DskReference ref = cell.dsk_reference(arr);
            for (std::size_t v = 0; v < M; ++v)
            {
                Observation obs = cell.observe(arr, v, 0.0, rng);
                errors += dsk_detect(obs, ref) != v;
            }
        }
        CHECK(errors == 0);
    }
}

TEST_CASE("Detection - noiseless correctness when candidates are separated by >= 2/B")
{
    // A 20 m array makes the TDoA signatures of the four transmitters resolvable in delay alone.
    CircularCellConfig cfg;
    cfg.array_radius = 20.0;
    CircularCell cell(cfg);
    RandomStream rng(43);
    double T = kPulse.period();
    int used = 0;
    std::size_t errors = 0;
    for (int p = 0; p < 400 && used < 100; ++p)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        DskReference ref = cell.dsk_reference(arr);
        double sep = 1e300;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b)
            {
                double worst = 0.0;
                for (std::size_t i = 1; i < 7; ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        worst = std::max(worst, std::abs(ref.shift(a, i, j) - ref.shift(b, i, j)));
                sep = std::min(sep, worst);
            }
        if (sep < 2 * T)
            continue;
        ++used;
        for (std::size_t v = 0; v < 4; ++v)
            errors += dsk_detect(cell.observe(arr, v, 0.0, rng), ref) != v;
    }
    CHECK(used == 100);
    CHECK(errors == 0);
}

TEST_CASE("Detection - common rotation leaves statistics bit-identical")
{
    CircularCell cell = default_cell();
    RandomStream rng(44);
    double sigma2 = 7.0 / db_to_linear(6.0); // array SNR 6 dB
    for (int trial = 0; trial < 1000; ++trial)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        DskReference ref = cell.dsk_reference(arr);
        std::size_t v = rng.index(4);
        Observation obs = cell.observe(arr, v, sigma2, rng);
        Observation rotated = obs;
        rotate(rotated, rng.uniform(-50.0, 50.0));
        CHECK(dsk_statistics(obs, ref) == dsk_statistics(rotated, ref));
        CHECK(dsk_detect(obs, ref) == dsk_detect(rotated, ref));
    }
}

TEST_CASE("Detection - common rotation leaves sampled-path decisions unchanged")
{
    CircularCell cell = default_cell();
    RandomStream rng(45);
    GridSpec spec{4, 16};
    for (int trial = 0; trial < 10; ++trial)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        DskReference ref = cell.dsk_reference(arr);
        std::size_t v = rng.index(4);
        const auto &fp = ref.fingerprint(v);
        SampledObservation s;
        for (std::size_t n = 0; n < 7; ++n)
        {
            s.antennas.push_back(synthesize(kPulse, 1.0, fp.delay(n), kFc, 0.0, spec));
            add_noise(s.antennas.back(), 0.05, rng);
        }
        Observation obs = s;
        Observation rotated = obs;
        rotate(rotated, rng.uniform(0, kTwoPi));
        auto a = dsk_statistics(obs, ref);
        auto b = dsk_statistics(rotated, ref);
        for (std::size_t m = 0; m < 4; ++m)
            CHECK(a[m] == Approx(b[m]).epsilon(1e-10).margin(1e-22));
        CHECK(dsk_detect(obs, ref) == dsk_detect(rotated, ref));
    }
}

TEST_CASE("Detection - sampled path matches the analytic path (N=3, M=2, kappa=32, W=256)")
{
    MdArray arr = MdArray::uniform_circular({0, 0}, 3, 0.1);
    std::vector<TdoaFingerprint> fps{fingerprint({100, 0}, arr, 3e8, kFc, 0),
                                     fingerprint({0, 100}, arr, 3e8, kFc, 1)};
    DskReference ref(fps);
    GridSpec spec{32, 256};
    double rho = 0.8;
    double es = kPulse.energy();
    for (std::size_t v = 0; v < 2; ++v)
    {
        SampledObservation s;
        for (std::size_t n = 0; n < 3; ++n)
            s.antennas.push_back(synthesize(kPulse, rho, fps[v].delay(n), kFc, 0.0, spec));
        Observation sampled = s;
        Observation analytic = clean(fps[v], rho);
        for (std::size_t m = 0; m < 2; ++m)
        {
            auto ts = dsk_pair_terms(sampled, ref, m);
            auto ta = dsk_pair_terms(analytic, ref, m);
            REQUIRE(ts.size() == 3);
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(std::abs(ts[k] - ta[k]) <= 1e-3 * rho * rho * es);
        }
    }
}

TEST_CASE("Detection - antenna-count mismatch is an internal-consistency error")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({5, 5});
    DskReference ref = cell.dsk_reference(arr);
    MdArray small = MdArray::uniform_circular({5, 5}, 3, 0.1);
    Observation obs = clean(fingerprint({100, 0}, small, 3e8, kFc), 1.0);
    CHECK_THROWS_AS(dsk_statistic(obs, ref, 0), InternalConsistency);
    CHECK_THROWS_AS(dsk_detect(obs, ref), InternalConsistency);
}

TEST_CASE("Detection - magnitude statistic")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({30, 41});
    DskReference ref = cell.dsk_reference(arr);
    AnalyticObservation obs = clean(ref.fingerprint(1), 1.3);
    double expect = 6.0 * 1.3 * 1.3 * kPulse.energy();
    CHECK(dsk_statistic_magnitude(Observation(obs), ref, 1) == Approx(expect).epsilon(1e-12));

    // Per-antenna phase offsets do not change the noiseless magnitude statistic.
    RandomStream rng(46);
    AnalyticObservation scrambled = obs;
    for (auto &g : scrambled.gains)
        g *= std::polar(1.0, rng.uniform(0, kTwoPi));
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(dsk_statistic_magnitude(Observation(scrambled), ref, m) ==
              Approx(dsk_statistic_magnitude(Observation(obs), ref, m)).epsilon(1e-12));
}

TEST_CASE("Detection - magnitude detector agrees with the coherent detector at 10 dB per antenna")
{
    // Envelope-only detection needs candidate TDoAs that differ by a sizeable fraction of T.
    CircularCellConfig cfg;
    cfg.array_radius = 20.0;
    CircularCell cell{cfg};
    RandomStream rng(47);
    double sigma2 = 1.0 / db_to_linear(10.0); // per-antenna SNR
    const int trials = 4000;
    int agree = 0;
    for (int t = 0; t < trials; ++t)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        DskReference ref = cell.dsk_reference(arr);
        Observation obs = cell.observe(arr, rng.index(4), sigma2, rng);
        agree += dsk_detect(obs, ref) == dsk_detect_magnitude(obs, ref);
    }
    CHECK(agree >= 0.95 * trials);
}

TEST_CASE("Detection - pilot averaging")
{
    std::vector<cplx> h{{1, 2}, {-0.5, 0.25}, {0, -3}};
    std::vector<std::vector<cplx>> same(4, h);
    CHECK(estimate_csi_reference(same) == h);
    std::vector<std::vector<cplx>> one{h};
    CHECK(estimate_csi_reference(one) == h);
    std::vector<std::vector<cplx>> none;
    CHECK_THROWS_AS(estimate_csi_reference(none), InvalidArgument);

    // Per-entry variance sigma2 / N_p.
    RandomStream rng(48);
    double sigma2 = 0.6;
    const int reps = 100000;
    double var = 0.0;
    for (int r = 0; r < reps; ++r)
    {
        std::vector<std::vector<cplx>> p(4, h);
        for (auto &x : p)
            for (auto &e : x)
                e += awgn(sigma2, rng);
        auto est = estimate_csi_reference(p);
        var += std::norm(est[1] - h[1]);
    }
    CHECK(var / reps == Approx(sigma2 / 4).epsilon(0.02));
}

TEST_CASE("Detection - phase features")
{
    std::vector<cplx> h{{2, 0}, {0.5, 0}, {7, 0}, {0.01, 0}};
    PhaseFeature f = PhaseFeature::from_vector(h);
    for (const auto &x : f.tail())
    {
        CHECK(x.real() == Approx(1.0 / std::sqrt(3.0)));
        CHECK(std::abs(x.imag()) < 1e-15);
    }

    RandomStream rng(49);
    std::vector<cplx> g(5);
    for (auto &x : g)
        x = rng.complex_normal(1.0);
    PhaseFeature a = PhaseFeature::from_vector(g);
    double norm2 = 0.0;
    for (const auto &x : a.tail())
    {
        CHECK(std::abs(x) == Approx(0.5).epsilon(1e-14));
        norm2 += std::norm(x);
    }
    CHECK(norm2 == Approx(1.0).epsilon(1e-14));
    for (cplx c : {cplx(3, -1), cplx(-1e-3, 0), cplx(0, 1e6)})
    {
        std::vector<cplx> scaled(g);
        for (auto &x : scaled)
            x *= c;
        PhaseFeature b = PhaseFeature::from_vector(scaled);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(std::abs(a.tail()[k] - b.tail()[k]) < 1e-14);
    }

    std::vector<cplx> bad{{1e-14, 0}, {1, 0}, {1, 1}};
    CHECK_THROWS_AS(PhaseFeature::from_vector(bad), DegenerateReference);
    std::vector<std::vector<cplx>> pilots{bad};
    CHECK_THROWS_AS(estimate_phase_feature(pilots), DegenerateReference);
}

TEST_CASE("Detection - phase feature from noisy pilots at 20 dB (N=5, N_p=4)")
{
    RandomStream rng(50);
    const int reps = 2000;
    double mean = 0.0;
    int above = 0;
    for (int r = 0; r < reps; ++r)
    {
        std::vector<cplx> h(5);
        for (auto &x : h)
            x = std::polar(1.0, rng.uniform(0, kTwoPi));
        PhaseFeature truth = PhaseFeature::from_vector(h);
        std::vector<std::vector<cplx>> pilots(4, h);
        for (auto &p : pilots)
            for (auto &x : p)
                x += awgn(0.01, rng);
        double s = estimate_phase_feature(pilots).similarity(truth);
        mean += s;
        above += s >= 0.99;
    }
    CHECK(mean / reps >= 0.99);
    CHECK(above >= 0.95 * reps);
}

TEST_CASE("Detection - feature detector")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({-40, 10});
    CsiReference csi = cell.csi_reference(arr);
    std::vector<PhaseFeature> features;
    for (const auto &h : csi.vectors)
        features.push_back(PhaseFeature::from_vector(h));
    RandomStream rng(51);
    for (std::size_t v = 0; v < 4; ++v)
    {
        auto d = dsk_detect_feature(csi.vectors[v], features, rng);
        CHECK(d.index == v);
        CHECK_FALSE(d.erasure);
        for (int k = 0; k < 20; ++k)
        {
            cplx c = std::polar(rng.uniform(1e-3, 1e3), rng.uniform(0, kTwoPi));
            std::vector<cplx> y(csi.vectors[v]);
            for (auto &x : y)
                x *= c;
            CHECK(dsk_detect_feature(y, features, rng).index == v);
        }
    }

    std::vector<cplx> null(7, cplx{});
    null[3] = 1.0;
    auto d = dsk_detect_feature(null, features, rng);
    CHECK(d.erasure);
    CHECK(d.index < 4);
}

TEST_CASE("Detection - feature detector ignores a Wiener common phase")
{
    CircularCell cell = default_cell();
    RandomStream rng(52);
    WienerPhase w{1e5, 1e-6, 0.0};
    std::size_t differ = 0;
    for (int t = 0; t < 2000; ++t)
    {
        MdArray arr = cell.array_at(cell.sample_md_center(rng));
        CsiReference csi = cell.csi_reference(arr);
        std::vector<PhaseFeature> features;
        for (const auto &h : csi.vectors)
            features.push_back(PhaseFeature::from_vector(h));
        std::size_t v = rng.index(4);
        std::vector<cplx> y(csi.vectors[v]);
        for (auto &x : y)
            x += awgn(0.05, rng);
        w = wiener_step(w, rng.normal());
        std::vector<cplx> rotated(y);
        for (auto &x : rotated)
            x *= std::polar(1.0, w.state);
        differ += dsk_detect_feature(y, features, rng).index != dsk_detect_feature(rotated, features, rng).index;
    }
    CHECK(differ == 0);
}

TEST_CASE("Detection - SSK baseline")
{
    CircularCell cell = default_cell();
    MdArray arr = cell.array_at({22, -61});
    CsiReference csi = cell.csi_reference(arr);
    for (std::size_t v = 0; v < 4; ++v)
        CHECK(ssk_detect(csi.vectors[v], csi) == v);

    CsiReference same{std::vector<std::vector<cplx>>(4, csi.vectors[2])};
    CHECK(ssk_detect(csi.vectors[2], same) == 0);

    // A uniformly random common phase defeats coherent references.
    RandomStream rng(53);
    const int trials = 4000;
    int errors = 0;
    for (int t = 0; t < trials; ++t)
    {
        MdArray a = cell.array_at(cell.sample_md_center(rng));
        CsiReference ref = cell.csi_reference(a);
        std::size_t v = rng.index(4);
        std::vector<cplx> y(ref.vectors[v]);
        cplx r = std::polar(1.0, rng.uniform(0, kTwoPi));
        for (auto &x : y)
            x *= r;
        errors += ssk_detect(y, ref) != v;
    }
    CHECK(double(errors) / trials > 0.1);
}

TEST_CASE("Detection - SSK with perfect CSI is no worse than DSK at 12 and 14 dB")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::snr_db, {12.0, 14.0}, {}};
    SerCurve curve = run_ser_sweep(cell, sweep, 10000, 54, 0);
    auto dsk = curve.series("dsk");
    auto ssk = curve.series("ssk");
    REQUIRE(dsk.size() == 2);
    for (std::size_t p = 0; p < 2; ++p)
    {
        CHECK(ssk[p].ser <= dsk[p].ser);
        CHECK(ssk[p].ci_high < dsk[p].ci_low);
    }
}
