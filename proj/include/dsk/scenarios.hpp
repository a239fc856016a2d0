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

#include "dsk/detection.hpp"
#include "dsk/geometry.hpp"
#include "dsk/impairments.hpp"
#include "dsk/random.hpp"
#include "dsk/statistics.hpp"
#include "dsk/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsk
{
    struct CircularCellConfig
    {
        double cell_radius = 100.0;
        std::size_t M = 4;
        std::size_t N = 7;
        double array_radius = 0.1;
        double f_c = 30e9;
        double bandwidth = 100e6;
        double speed = 30.0 / 3.6;
        double c = kSpeedOfLight;
        double min_tx_distance = 1.0;
        int noise_half_width = 4; // Nyquist noise coefficients per side of the observation window

        void validate() const;
    };

    // BS antennas on the cell circumference, MD array of N elements on a circle.
    class CircularCell
    {
    public:
        explicit CircularCell(CircularCellConfig cfg);

        const CircularCellConfig &config() const { return cfg_; }
        const std::vector<Point2D> &transmitters() const { return tx_; }
        SincPulse pulse() const { return SincPulse{cfg_.bandwidth}; }

        MdArray array_at(Point2D center) const;

        // Uniform over the disc, rejecting centres within min_tx_distance of a transmitter.
        Point2D sample_md_center(RandomStream &rng) const;

        DskReference dsk_reference(const MdArray &array) const;

        // Noiseless symbol-timed matched-filter outputs for every transmitter.
        CsiReference csi_reference(const MdArray &array) const;

        // Unit-amplitude signal from transmitter v plus CN(0, sigma2) noise coefficients.
        // Delays are relative to the mean arrival time (symbol timing on the array centre).
        AnalyticObservation observe(const MdArray &array, std::size_t v, double sigma2, RandomStream &rng) const;

    private:
        CircularCellConfig cfg_;
        std::vector<Point2D> tx_;
    };

    CircularCell build_circular_cell(const CircularCellConfig &cfg);

    enum class SweepVariable
    {
        snr_db,
        t_c,
        sigma_df
    };

    SweepVariable parse_sweep_variable(const std::string &name);
    std::string to_string(SweepVariable v);

    // Operating point of one circular-cell grid point. snr_db is the array SNR N rho^2 / sigma^2.
    struct CellOperatingPoint
    {
        double snr_db = 14.0;
        double t_c = 0.0;      // s between reference acquisition and the observed symbol
        double sigma_df = 0.0; // Hz, std of the per-trial frequency offset
    };

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::snr_db;
        std::vector<double> grid;
        CellOperatingPoint fixed;

        CellOperatingPoint at(double x) const;
    };

    struct TrialOutcome
    {
        std::size_t transmitted = 0;
        std::size_t dsk = 0;
        std::size_t ssk = 0;
    };

    // One Monte Carlo trial: MD placement, transmitter choice, displacement, phase offset, noise.
    TrialOutcome run_circular_trial(const CircularCell &cell, const CellOperatingPoint &op, RandomStream &rng);

    // Rows "dsk<suffix>" and "ssk<suffix>" per grid point. Trial t of point p uses stream (seed, p, t),
    // so the result is bitwise independent of the worker count.
    SerCurve run_ser_sweep(const CircularCell &cell, const SweepSpec &sweep, std::size_t trials, std::uint64_t seed,
                           unsigned workers = 0, const std::string &suffix = "");

    double overhead_ratio(std::size_t pilots_per_tx, std::size_t data_symbols, std::size_t transmitters = 2);

    struct RsuConfig
    {
        double rsu_spacing = 100.0;
        double lateral_offset = 10.0;
        std::size_t N = 5;
        double element_spacing = 0.5;       // wavelengths
        double array_axis = kPi / 4.0;      // ULA axis angle to the road
        std::size_t M = 2;                  // RSUs per segment alphabet
        std::size_t pilots = 4;             // N_p per transmitter
        double symbol_period = 1e-6;        // T_s
        double update_period = 1e-5;        // T_upd
        double p_tx = 0.0158489319246111;   // W (12 dBm)
        double sigma2 = 1e-12;              // W
        double sigma_df = 100.0;            // Hz
        double vehicle_speed = 30.0;        // m/s
        double f_c = 30e9;
        double c = kSpeedOfLight;

        double wavelength() const { return c / f_c; }
        // U = ceil(T_upd / T_s), robust to representation error in the ratio.
        std::size_t data_symbols() const;
        void validate() const;
    };

    // RSUs at (k spacing, offset); the vehicle drives along y = 0 at constant speed.
    class RsuScenario
    {
    public:
        explicit RsuScenario(RsuConfig cfg);

        const RsuConfig &config() const { return cfg_; }
        Point2D rsu(long k) const;
        long segment(double x) const;

        // RSU indices forming the alphabet while the vehicle is at abscissa x.
        std::vector<long> alphabet(double x) const;

        MdArray array_at(Point2D center) const;

        // Free-space channel vector sqrt(P) lambda/(4 pi d_n) e^{-j 2 pi d_n / lambda}.
        std::vector<cplx> channel(Point2D tx, const MdArray &array) const;

        // Per-antenna SNR at the array centre.
        double snr(Point2D tx, Point2D rx) const;

    private:
        RsuConfig cfg_;
    };

    RsuScenario build_rsu(const RsuConfig &cfg);

    struct RsuDriveOptions
    {
        double x_start = 0.0;
        std::optional<std::uint64_t> phase_seed; // overrides the phase-noise stream only
        std::string suffix;
        double x_value = 0.0; // sweep value written into the result rows
    };

    struct RsuDriveResult
    {
        SerPoint dsk;
        SerPoint ssk;
        double overhead = 0.0; // realised pilots / (pilots + data)
        std::size_t pilot_symbols = 0;
        std::size_t data_symbols = 0;
        std::size_t erasures = 0;
        double mean_snr_db = 0.0;
    };

    // Symbol-by-symbol drive over `duration` seconds.
    RsuDriveResult run_rsu_drive(const RsuConfig &cfg, double duration, std::uint64_t seed,
                                 const RsuDriveOptions &options = {});

    enum class RsuVariable
    {
        t_upd,
        rsu_spacing,
        sigma_df,
        p_tx_dbm
    };

    RsuVariable parse_rsu_variable(const std::string &name);
    std::string to_string(RsuVariable v);

    // Applies x to a copy of the config.
    RsuConfig rsu_at(const RsuConfig &base, RsuVariable variable, double x);

    // One drive per grid point. duration <= 0 drives one full segment (spacing / speed).
    // Column p uses seed derive_seed(seed, {p}).
    SerCurve run_rsu_sweep(const RsuConfig &base, RsuVariable variable, const std::vector<double> &grid,
                           double duration, std::uint64_t seed, unsigned workers = 0, const std::string &suffix = "");
}
