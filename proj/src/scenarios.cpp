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

#include "dsk/scenarios.hpp"
#include "dsk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsk
{
    namespace
    {
        // e^{-j 2 pi f x} with the cycle count reduced before scaling by 2 pi.
        cplx carrier_phasor(double cycles) { return std::polar(1.0, -kTwoPi * (cycles - std::floor(cycles))); }

        bool is_power_of_two(std::size_t m) { return m >= 1 && (m & (m - 1)) == 0; }
    }

    void CircularCellConfig::validate() const
    {
        if (!is_power_of_two(M) || M < 2)
            throw InvalidArgument("M must be a power of two >= 2, got " + std::to_string(M));
        if (N < 2)
            throw InvalidArgument("N must be >= 2");
        if (!(cell_radius > 0.0) || !(array_radius > 0.0) || !(f_c > 0.0) || !(bandwidth > 0.0) || !(c > 0.0))
            throw InvalidArgument("cell radius, array radius, f_c, B and c must be positive");
        if (!(speed >= 0.0) || !(min_tx_distance >= 0.0))
            throw InvalidArgument("speed and min_tx_distance must be >= 0");
        if (noise_half_width < 0)
            throw InvalidArgument("noise_half_width must be >= 0");
    }

    CircularCell::CircularCell(CircularCellConfig cfg) : cfg_(cfg)
    {
        cfg_.validate();
        tx_.resize(cfg_.M);
        for (std::size_t m = 0; m < cfg_.M; ++m)
        {
            double a = kTwoPi * double(m) / double(cfg_.M);
            tx_[m] = {cfg_.cell_radius * std::cos(a), cfg_.cell_radius * std::sin(a)};
        }
    }

    MdArray CircularCell::array_at(Point2D center) const
    {
        return MdArray::uniform_circular(center, cfg_.N, cfg_.array_radius);
    }

    Point2D CircularCell::sample_md_center(RandomStream &rng) const
    {
        for (;;)
        {
            double r = cfg_.cell_radius * std::sqrt(rng.uniform());
            double a = rng.uniform(0.0, kTwoPi);
            Point2D p{r * std::cos(a), r * std::sin(a)};
            bool ok = true;
            for (const auto &t : tx_)
                ok = ok && distance(p, t) > cfg_.min_tx_distance;
            if (ok)
                return p;
        }
    }

    DskReference CircularCell::dsk_reference(const MdArray &array) const
    {
        std::vector<TdoaFingerprint> fps;
        fps.reserve(tx_.size());
        for (std::size_t m = 0; m < tx_.size(); ++m)
            fps.push_back(fingerprint(tx_[m], array, cfg_.c, cfg_.f_c, m));
        return DskReference(std::move(fps));
    }

    namespace
    {
        double mean(const std::vector<double> &v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / double(v.size());
        }
    }

    CsiReference CircularCell::csi_reference(const MdArray &array) const
    {
        CsiReference ref;
        double T = 1.0 / cfg_.bandwidth;
        for (const auto &t : tx_)
        {
            auto tau = arrival_times(t, array, cfg_.c);
            double centre = mean(tau);
            std::vector<cplx> h(tau.size());
            for (std::size_t n = 0; n < tau.size(); ++n)
                h[n] = carrier_phasor(cfg_.f_c * tau[n]) * sinc(kPi * (tau[n] - centre) / T);
            ref.vectors.push_back(std::move(h));
        }
        return ref;
    }

    AnalyticObservation CircularCell::observe(const MdArray &array, std::size_t v, double sigma2,
                                              RandomStream &rng) const
    {
        auto tau = arrival_times(tx_.at(v), array, cfg_.c);
        double centre = mean(tau);
        std::vector<cplx> gains(tau.size());
        std::vector<double> delays(tau.size());
        for (std::size_t n = 0; n < tau.size(); ++n)
        {
            gains[n] = carrier_phasor(cfg_.f_c * tau[n]);
            delays[n] = tau[n] - centre;
        }
        return make_analytic_observation(pulse(), std::move(gains), std::move(delays), sigma2, cfg_.noise_half_width,
                                         rng);
    }

    CircularCell build_circular_cell(const CircularCellConfig &cfg) { return CircularCell(cfg); }

    SweepVariable parse_sweep_variable(const std::string &name)
    {
        if (name == "snr_db")
            return SweepVariable::snr_db;
        if (name == "t_c")
            return SweepVariable::t_c;
        if (name == "sigma_df")
            return SweepVariable::sigma_df;
        throw ConfigError("unknown sweep variable '" + name + "' (expected snr_db, t_c or sigma_df)");
    }

    std::string to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::snr_db:
            return "snr_db";
        case SweepVariable::t_c:
            return "t_c";
        case SweepVariable::sigma_df:
            return "sigma_df";
        }
        return "?";
    }

    CellOperatingPoint SweepSpec::at(double x) const
    {
        CellOperatingPoint op = fixed;
        switch (variable)
        {
        case SweepVariable::snr_db:
            op.snr_db = x;
            break;
        case SweepVariable::t_c:
            op.t_c = x;
            break;
        case SweepVariable::sigma_df:
            op.sigma_df = x;
            break;
        }
        return op;
    }

    TrialOutcome run_circular_trial(const CircularCell &cell, const CellOperatingPoint &op, RandomStream &rng)
    {
        const auto &cfg = cell.config();
        Point2D centre = cell.sample_md_center(rng);
        MdArray before = cell.array_at(centre);
        std::size_t v = rng.index(cfg.M);
        MobilityState mob{cfg.speed, rng.uniform(0.0, kTwoPi)};
        double df = op.sigma_df * rng.normal();

        MdArray after = displace(before, mob, op.t_c);
        double sigma2 = double(cfg.N) / db_to_linear(op.snr_db);
        Observation obs = cell.observe(after, v, sigma2, rng);
        rotate(obs, -kTwoPi * df * op.t_c);

        TrialOutcome out;
        out.transmitted = v;
        out.dsk = dsk_detect(obs, cell.dsk_reference(before));
        out.ssk = ssk_detect(matched_filter_outputs(obs), cell.csi_reference(before));
        return out;
    }

    SerCurve run_ser_sweep(const CircularCell &cell, const SweepSpec &sweep, std::size_t trials, std::uint64_t seed,
                           unsigned workers, const std::string &suffix)
    {
        if (trials < 1)
            throw InvalidArgument("run_ser_sweep needs at least one trial");
        if (sweep.grid.empty())
            throw InvalidArgument("run_ser_sweep needs a nonempty grid");

        constexpr std::size_t chunk = 256;
        std::size_t chunks = (trials + chunk - 1) / chunk;
        std::size_t units = sweep.grid.size() * chunks;
        std::vector<std::size_t> dsk_err(units, 0), ssk_err(units, 0);

        parallel_for(units, workers, [&](std::size_t u) {
            std::size_t p = u / chunks;
            std::size_t c = u % chunks;
            CellOperatingPoint op = sweep.at(sweep.grid[p]);
            std::size_t end = std::min(trials, (c + 1) * chunk);
            for (std::size_t t = c * chunk; t < end; ++t)
            {
                RandomStream rng(seed, {stream::kTrial, p, t});
                auto r = run_circular_trial(cell, op, rng);
                dsk_err[u] += r.dsk != r.transmitted;
                ssk_err[u] += r.ssk != r.transmitted;
            }
        });

        SerCurve curve;
        curve.variable = to_string(sweep.variable);
        double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t p = 0; p < sweep.grid.size(); ++p)
        {
            std::size_t de = 0, se = 0;
            for (std::size_t c = 0; c < chunks; ++c)
            {
                de += dsk_err[p * chunks + c];
                se += ssk_err[p * chunks + c];
            }
            double snr_db = sweep.at(sweep.grid[p]).snr_db;
            curve.points.push_back(make_ser_point(sweep.grid[p], "dsk" + suffix, de, trials, nan, snr_db));
            curve.points.push_back(make_ser_point(sweep.grid[p], "ssk" + suffix, se, trials, nan, snr_db));
        }
        return curve;
    }

    double overhead_ratio(std::size_t pilots_per_tx, std::size_t data_symbols, std::size_t transmitters)
    {
        if (pilots_per_tx < 1 || data_symbols < 1)
            throw InvalidArgument("overhead_ratio needs N_p >= 1 and U >= 1");
        double p = double(transmitters * pilots_per_tx);
        return p / (double(data_symbols) + p);
    }

    std::size_t RsuConfig::data_symbols() const
    {
        double u = std::ceil(update_period / symbol_period * (1.0 - 1e-12));
        return std::size_t(std::max(1.0, u));
    }

    void RsuConfig::validate() const
    {
        if (N < 2)
            throw InvalidArgument("RSU array needs N >= 2");
        if (M < 2 || M % 2 != 0)
            throw InvalidArgument("RSU alphabet size M must be even and >= 2");
        if (pilots < 1)
            throw InvalidArgument("N_p must be >= 1");
        if (!(rsu_spacing > 0.0) || !(symbol_period > 0.0) || !(update_period > 0.0) || !(f_c > 0.0) ||
            !(c > 0.0) || !(element_spacing > 0.0))
            throw InvalidArgument("RSU spacing, T_s, T_upd, f_c, c and element spacing must be positive");
        if (!(p_tx >= 0.0) || !(sigma2 >= 0.0) || !(sigma_df >= 0.0) || !(vehicle_speed >= 0.0))
            throw InvalidArgument("p_tx, sigma2, sigma_df and speed must be >= 0");
    }

    RsuScenario::RsuScenario(RsuConfig cfg) : cfg_(cfg) { cfg_.validate(); }

    Point2D RsuScenario::rsu(long k) const { return {double(k) * cfg_.rsu_spacing, cfg_.lateral_offset}; }

    long RsuScenario::segment(double x) const { return long(std::floor(x / cfg_.rsu_spacing)); }

    std::vector<long> RsuScenario::alphabet(double x) const
    {
        long k = segment(x);
        long half = long(cfg_.M / 2);
        std::vector<long> ids;
        for (long i = k - half + 1; i <= k + half; ++i)
            ids.push_back(i);
        return ids;
    }

    MdArray RsuScenario::array_at(Point2D center) const
    {
        return MdArray::uniform_linear(center, cfg_.N, cfg_.element_spacing * cfg_.wavelength(), cfg_.array_axis);
    }

    std::vector<cplx> RsuScenario::channel(Point2D tx, const MdArray &array) const
    {
        double lambda = cfg_.wavelength();
        double amp = std::sqrt(cfg_.p_tx);
        std::vector<cplx> h(array.size());
        for (std::size_t n = 0; n < h.size(); ++n)
        {
            double d = distance(tx, array.element_position(n));
            h[n] = amp * free_space_gain(d, lambda) * carrier_phasor(d / lambda);
        }
        return h;
    }

    double RsuScenario::snr(Point2D tx, Point2D rx) const
    {
        LinkBudget b{cfg_.p_tx, cfg_.f_c, cfg_.sigma2, cfg_.c};
        return dsk::snr(b, distance(tx, rx), 1).per_antenna;
    }

    RsuScenario build_rsu(const RsuConfig &cfg) { return RsuScenario(cfg); }

    RsuDriveResult run_rsu_drive(const RsuConfig &cfg, double duration, std::uint64_t seed,
                                 const RsuDriveOptions &options)
    {
        if (!(duration > 0.0))
            throw InvalidArgument("run_rsu_drive needs a positive duration");
        RsuScenario sc(cfg);
        const std::size_t M = cfg.M;
        const std::size_t Np = cfg.pilots;
        const std::size_t U = cfg.data_symbols();
        const std::size_t pilot_len = M * Np;
        const std::size_t cycle = pilot_len + U;
        const std::size_t n_symbols = std::size_t(std::floor(duration / cfg.symbol_period));

        RandomStream sym_rng(seed, {stream::kSymbols});
        RandomStream noise_rng(seed, {stream::kThermal});
        RandomStream phase_rng(options.phase_seed ? derive_seed(*options.phase_seed, {stream::kPhase})
                                                  : derive_seed(seed, {stream::kPhase}));

        WienerPhase phase{cfg.sigma_df, cfg.symbol_period, 0.0};
        long current_segment = std::numeric_limits<long>::min();
        std::size_t pos = 0; // position within the pilot/data cycle
        std::vector<std::vector<std::vector<cplx>>> pilots(M);
        CsiReference csi;
        std::vector<PhaseFeature> features;
        bool features_ok = false;

        std::size_t n_pilot = 0, n_data = 0, dsk_err = 0, ssk_err = 0, erasures = 0;
        double snr_sum = 0.0;
        std::vector<cplx> y(cfg.N);
        const long half = long(M / 2);
        const double lambda = cfg.wavelength();
        const double amp = std::sqrt(cfg.p_tx);
        std::vector<Point2D> offsets(cfg.N);
        {
            MdArray a = sc.array_at({0.0, 0.0});
            for (std::size_t n = 0; n < cfg.N; ++n)
                offsets[n] = a.element_position(n);
        }

        for (std::size_t k = 0; k < n_symbols; ++k)
        {
            double x = options.x_start + cfg.vehicle_speed * double(k) * cfg.symbol_period;
            long seg = sc.segment(x);
            if (seg != current_segment)
            {
                current_segment = seg;
                pos = 0;
            }
            phase = wiener_step(phase, phase_rng.normal());
            cplx rot = std::polar(1.0, phase.state);
            Point2D centre{x, 0.0};
            long first_rsu = seg - half + 1;

            auto observe = [&](std::size_t m) {
                Point2D tx = sc.rsu(first_rsu + long(m));
                for (std::size_t n = 0; n < cfg.N; ++n)
                {
                    double d = distance(tx, centre + offsets[n]);
                    cplx h = amp * (lambda / (4.0 * kPi * d)) * carrier_phasor(d / lambda);
                    cplx w = noise_rng.complex_normal(cfg.sigma2);
                    y[n] = rot * (h + w);
                }
            };

            if (pos < pilot_len)
            {
                std::size_t m = pos / Np;
                if (pos == 0)
                    for (auto &p : pilots)
                        p.clear();
                observe(m);
                pilots[m].push_back(y);
                ++n_pilot;
                if (pos + 1 == pilot_len)
                {
                    csi.vectors.clear();
                    features.clear();
                    features_ok = true;
                    for (std::size_t i = 0; i < M; ++i)
                    {
                        csi.vectors.push_back(estimate_csi_reference(pilots[i]));
                        try
                        {
                            features.push_back(PhaseFeature::from_vector(csi.vectors.back()));
                        }
                        catch (const DegenerateReference &)
                        {
                            features_ok = false;
                        }
                    }
                }
            }
            else
            {
                std::size_t v = sym_rng.index(M);
                observe(v);
                ++n_data;
                snr_sum += sc.snr(sc.rsu(first_rsu + long(v)), centre);
                ssk_err += ssk_detect(y, csi) != v;
                FeatureDecision d;
                if (features_ok)
                    d = dsk_detect_feature(y, features, sym_rng);
                else
                    d = {sym_rng.index(M), true};
                erasures += d.erasure;
                dsk_err += d.index != v;
            }
            pos = (pos + 1) % cycle;
        }
        if (n_data == 0)
            throw InvalidArgument("drive too short: no data symbols were transmitted");

        RsuDriveResult r;
        r.pilot_symbols = n_pilot;
        r.data_symbols = n_data;
        r.erasures = erasures;
        r.overhead = double(n_pilot) / double(n_pilot + n_data);
        r.mean_snr_db = linear_to_db(snr_sum / double(n_data));
        r.dsk = make_ser_point(options.x_value, "dsk" + options.suffix, dsk_err, n_data, r.overhead, r.mean_snr_db);
        r.ssk = make_ser_point(options.x_value, "ssk" + options.suffix, ssk_err, n_data, r.overhead, r.mean_snr_db);
        return r;
    }

    RsuVariable parse_rsu_variable(const std::string &name)
    {
        if (name == "t_upd")
            return RsuVariable::t_upd;
        if (name == "rsu_spacing")
            return RsuVariable::rsu_spacing;
        if (name == "sigma_df")
            return RsuVariable::sigma_df;
        if (name == "p_tx_dbm")
            return RsuVariable::p_tx_dbm;
        throw ConfigError("unknown RSU sweep variable '" + name +
                          "' (expected t_upd, rsu_spacing, sigma_df or p_tx_dbm)");
    }

    std::string to_string(RsuVariable v)
    {
        switch (v)
        {
        case RsuVariable::t_upd:
            return "t_upd";
        case RsuVariable::rsu_spacing:
            return "rsu_spacing";
        case RsuVariable::sigma_df:
            return "sigma_df";
        case RsuVariable::p_tx_dbm:
            return "p_tx_dbm";
        }
        return "?";
    }

    RsuConfig rsu_at(const RsuConfig &base, RsuVariable variable, double x)
    {
        RsuConfig c = base;
        switch (variable)
        {
        case RsuVariable::t_upd:
            c.update_period = x;
            break;
        case RsuVariable::rsu_spacing:
            c.rsu_spacing = x;
            break;
        case RsuVariable::sigma_df:
            c.sigma_df = x;
            break;
        case RsuVariable::p_tx_dbm:
            c.p_tx = dbm_to_watts(x);
            break;
        }
        return c;
    }

    SerCurve run_rsu_sweep(const RsuConfig &base, RsuVariable variable, const std::vector<double> &grid,
                           double duration, std::uint64_t seed, unsigned workers, const std::string &suffix)
    {
        if (grid.empty())
            throw InvalidArgument("run_rsu_sweep needs a nonempty grid");
        std::vector<RsuDriveResult> results(grid.size());
        parallel_for(grid.size(), workers, [&](std::size_t p) {
            RsuConfig cfg = rsu_at(base, variable, grid[p]);
            double dur = duration > 0.0 ? duration : cfg.rsu_spacing / cfg.vehicle_speed;
            RsuDriveOptions opt;
            opt.suffix = suffix;
            opt.x_value = grid[p];
            results[p] = run_rsu_drive(cfg, dur, derive_seed(seed, {p}), opt);
        });
        SerCurve curve;
        curve.variable = to_string(variable);
        for (const auto &r : results)
        {
            curve.points.push_back(r.dsk);
            curve.points.push_back(r.ssk);
        }
        return curve;
    }
}
