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

#include "dsk/errors.hpp"
#include "dsk/impairments.hpp"
#include "dsk/scenarios.hpp"
#include "dsk/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

// Covered tests:
// - Circular cell construction and MD sampler
// - Confidence intervals
// - SER sweeps: noiseless limit, determinism, SNR monotonicity, t_c and phase-noise shapes
// - Pilot overhead and the update-period column mapping
// - RSU geometry, SNR composition and drive behaviour

using namespace dsk;
using Catch::Approx;

namespace
{
    CircularCell default_cell(std::size_t M = 4)
    {
        CircularCellConfig cfg;
        cfg.M = M;
        return build_circular_cell(cfg);
    }

    bool same_curve(const SerCurve &a, const SerCurve &b)
    {
        if (a.points.size() != b.points.size())
            return false;
        for (std::size_t i = 0; i < a.points.size(); ++i)
        {
            const auto &p = a.points[i];
            const auto &q = b.points[i];
            if (p.x != q.x || p.detector != q.detector || p.errors != q.errors || p.trials != q.trials ||
                p.ci_low != q.ci_low || p.ci_high != q.ci_high)
                return false;
        }
        return true;
    }
}

TEST_CASE("Scenarios - circular cell transmitters and array")
{
    CircularCell cell = default_cell();
    const auto &tx = cell.transmitters();
    REQUIRE(tx.size() == 4);
    std::vector<Point2D> expect{{100, 0}, {0, 100}, {-100, 0}, {0, -100}};
    for (std::size_t m = 0; m < 4; ++m)
    {
        CHECK(tx[m].x == Approx(expect[m].x).margin(1e-12));
        CHECK(tx[m].y == Approx(expect[m].y).margin(1e-12));
    }
    MdArray arr = cell.array_at({1, 2});
    REQUIRE(arr.size() == 7);
    for (std::size_t k = 0; k < 7; ++k)
    {
        CHECK(arr.elements()[k].angle == Approx(k * kTwoPi / 7).margin(1e-15));
        CHECK(arr.elements()[k].radius == 0.1);
    }

    CircularCellConfig bad;
    bad.M = 3;
    CHECK_THROWS_AS(build_circular_cell(bad), InvalidArgument);
    bad.M = 12;
    CHECK_THROWS_AS(build_circular_cell(bad), InvalidArgument);
}

TEST_CASE("Scenarios - MD sampler stays in the cell and away from transmitters")
{
    CircularCell cell = default_cell(16);
    RandomStream rng(71);
    double r2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        Point2D p = cell.sample_md_center(rng);
        CHECK(norm(p) <= 100.0);
        double closest = 1e300;
        for (const auto &t : cell.transmitters())
            closest = std::min(closest, distance(p, t));
        CHECK(closest > 1.0);
        r2 += p.x * p.x + p.y * p.y;
    }
    // Uniform over the disc: E[r^2] = R^2 / 2.
    CHECK(r2 / n == Approx(5000.0).epsilon(0.01));
}

TEST_CASE("Statistics - confidence intervals")
{
    auto zero = ser_interval(0, 1000);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    CHECK(zero.high < 0.01);
    CHECK(zero.low_count);

    auto all = ser_interval(50, 50);
    CHECK(all.high == 1.0);

    auto big = ser_interval(500, 10000);
    CHECK_FALSE(big.low_count);
    double half = 1.959963984540054 * std::sqrt(0.05 * 0.95 / 10000);
    CHECK(big.low == Approx(0.05 - half).epsilon(1e-9));
    CHECK(big.high == Approx(0.05 + half).epsilon(1e-9));

    // Wilson interval for 5 of 100.
    auto w = ser_interval(5, 100);
    double z = 1.959963984540054, p = 0.05, n = 100;
    double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
    double hw = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
    CHECK(w.low == Approx(centre - hw).epsilon(1e-12));
    CHECK(w.high == Approx(centre + hw).epsilon(1e-12));
}

TEST_CASE("Scenarios - noiseless static limit has zero errors")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::snr_db, {200.0}, {}};
    SerCurve c = run_ser_sweep(cell, sweep, 10000, 72, 0);
    for (const auto &p : c.points)
    {
        CHECK(p.trials == 10000);
        CHECK(p.errors == 0);
    }
}

TEST_CASE("Scenarios - sweeps are independent of the worker count")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::t_c, {1e-6, 1e-3}, {10.0, 0.0, 100.0}};
    SerCurve a = run_ser_sweep(cell, sweep, 1000, 73, 1);
    SerCurve b = run_ser_sweep(cell, sweep, 1000, 73, 4);
    SerCurve c = run_ser_sweep(cell, sweep, 1000, 73, 7);
    CHECK(same_curve(a, b));
    CHECK(same_curve(a, c));
    SerCurve d = run_ser_sweep(cell, sweep, 1000, 74, 4);
    CHECK_FALSE(same_curve(a, d));
}

TEST_CASE("Scenarios - SER decreases with SNR for both detectors")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::snr_db, {-4.0, 0.0, 4.0, 8.0, 12.0}, {}};
    SerCurve c = run_ser_sweep(cell, sweep, 10000, 75, 0);
    for (const char *det : {"dsk", "ssk"})
    {
        auto s = c.series(det);
        REQUIRE(s.size() == 5);
        for (std::size_t i = 1; i < s.size(); ++i)
            CHECK(s[i].ci_high < s[i - 1].ci_low);
    }
}

TEST_CASE("Scenarios - t_c sweep: SSK degrades while DSK stays put")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::t_c, {1e-6, 1e-3, 1e-2}, {14.0, 0.0, 0.0}};
    SerCurve c = run_ser_sweep(cell, sweep, 10000, 76, 0);
    auto dsk = c.series("dsk");
    auto ssk = c.series("ssk");
    double lo = std::min({dsk[0].ser, dsk[1].ser, dsk[2].ser});
    double hi = std::max({dsk[0].ser, dsk[1].ser, dsk[2].ser});
    CHECK(lo > 0.0);
    CHECK(hi < 2.0 * lo);
    CHECK(ssk[1].ser >= 10.0 * ssk[0].ser);
    CHECK(ssk[1].ci_low > ssk[0].ci_high);
}

TEST_CASE("Scenarios - phase-noise sweep: DSK flat within CI")
{
    CircularCell cell = default_cell();
    SweepSpec sweep{SweepVariable::sigma_df, {1.0, 1e1, 1e2, 1e3, 1e4, 1e5}, {14.0, 1e-4, 0.0}};
    SerCurve c = run_ser_sweep(cell, sweep, 10000, 77, 0);
    auto dsk = c.series("dsk");
    auto ssk = c.series("ssk");
    double max_low = 0.0, min_high = 1.0;
    for (const auto &p : dsk)
    {
        max_low = std::max(max_low, p.ci_low);
        min_high = std::min(min_high, p.ci_high);
    }
    CHECK(max_low <= min_high);
    CHECK(ssk[4].ser >= 5.0 * ssk[0].ser);
}

TEST_CASE("Scenarios - pilot overhead")
{
    CHECK(overhead_ratio(4, 10) == Approx(8.0 / 18.0));
    CHECK(overhead_ratio(4, 8) == Approx(0.5));
    CHECK(overhead_ratio(4, 100000000) < 1e-7);
    CHECK_THROWS_AS(overhead_ratio(0, 10), InvalidArgument);
    CHECK_THROWS_AS(overhead_ratio(4, 0), InvalidArgument);
}

TEST_CASE("Scenarios - overhead column headers from the update periods")
{
    std::vector<double> t_upd{1e-5, 3.4e-5, 1.17e-4, 3.92e-4, 1.592e-3, 4.436e-3, 1.1421e-2, 3.9992e-2};
    std::vector<double> header{44, 19, 6.42, 2, 0.50, 0.18, 0.07, 0.02};
    for (std::size_t i = 0; i < t_upd.size(); ++i)
    {
        RsuConfig cfg;
        cfg.update_period = t_upd[i];
        std::size_t U = cfg.data_symbols();
        CHECK(U == std::size_t(std::llround(t_upd[i] / 1e-6)));
        CHECK(std::abs(100.0 * overhead_ratio(cfg.pilots, U) - header[i]) <= 0.5);
    }
    RsuConfig one;
    one.update_period = one.symbol_period;
    CHECK(one.data_symbols() == 1);
    one.update_period = 1.5e-6;
    CHECK(one.data_symbols() == 2);
}

TEST_CASE("Scenarios - RSU geometry")
{
    RsuScenario sc = build_rsu(RsuConfig{});
    for (long k : {-2L, 0L, 1L, 7L})
    {
        CHECK(sc.rsu(k).x == Approx(100.0 * k));
        CHECK(sc.rsu(k).y == 10.0);
    }
    Point2D car{50.0, 0.0};
    auto ids = sc.alphabet(car.x);
    REQUIRE(ids.size() == 2);
    CHECK(ids[0] == 0);
    CHECK(ids[1] == 1);
    CHECK(distance(sc.rsu(ids[0]), car) == Approx(50.99).epsilon(1e-4));
    CHECK(distance(sc.rsu(ids[1]), car) == Approx(std::sqrt(50.0 * 50.0 + 100.0)).epsilon(1e-15));
    CHECK(sc.segment(99.999) == 0);
    CHECK(sc.segment(100.0) == 1);
    CHECK(sc.alphabet(150.0)[0] == 1);

    MdArray arr = sc.array_at(car);
    REQUIRE(arr.size() == 5);
    double spacing = distance(arr.element_position(0), arr.element_position(1));
    CHECK(spacing == Approx(0.005).epsilon(1e-12));
}

TEST_CASE("Scenarios - RSU SNR is the link budget at the current distance")
{
    RsuConfig cfg;
    cfg.p_tx = dbm_to_watts(12.0);
    RsuScenario sc(cfg);
    Point2D tx{0.0, 0.0}, rx{50.0, 0.0};
    LinkBudget b{dbm_to_watts(12.0), 30e9, 1e-12};
    CHECK(sc.snr(tx, rx) == Approx(snr(b, 50.0, 1).per_antenna).epsilon(1e-14));
    CHECK(linear_to_db(sc.snr(tx, rx)) == Approx(-0.964 + 7.0).margin(0.01));

    auto h = sc.channel(tx, sc.array_at(rx));
    for (const auto &x : h)
        CHECK(std::norm(x) / cfg.sigma2 == Approx(sc.snr(tx, rx)).epsilon(1e-3));
}

TEST_CASE("Scenarios - RSU drive with fresh references and high power is error-free")
{
    RsuConfig cfg;
    cfg.sigma_df = 0.0;
    cfg.update_period = cfg.symbol_period;
    cfg.p_tx = 10.0;
    RsuDriveResult r = run_rsu_drive(cfg, 0.05, 81);
    CHECK(r.data_symbols > 5000);
    CHECK(r.dsk.errors == 0);
    CHECK(r.ssk.errors == 0);
    CHECK(r.erasures == 0);
}

TEST_CASE("Scenarios - RSU overhead accounting")
{
    RsuConfig cfg;
    cfg.update_period = 1e-5;
    RsuDriveResult r = run_rsu_drive(cfg, 0.018, 82, {5.0});
    CHECK(r.pilot_symbols + r.data_symbols == 18000);
    CHECK(r.overhead == Approx(overhead_ratio(4, 10)).epsilon(1e-12));
    CHECK(r.dsk.overhead == r.overhead);
    CHECK_THROWS_AS(run_rsu_drive(cfg, 0.0, 82), InvalidArgument);
}

TEST_CASE("Scenarios - DSK decisions ignore the Wiener phase path in the noiseless limit")
{
    RsuConfig cfg;
    cfg.sigma2 = 0.0;
    cfg.sigma_df = 1e4;
    cfg.update_period = 1e-4;
    RsuDriveOptions a{10.0, 1u, "", 0.0};
    RsuDriveOptions b{10.0, 2u, "", 0.0};
    RsuDriveResult ra = run_rsu_drive(cfg, 0.05, 83, a);
    RsuDriveResult rb = run_rsu_drive(cfg, 0.05, 83, b);
    CHECK(ra.dsk.errors == rb.dsk.errors);
    CHECK(ra.ssk.errors != rb.ssk.errors);
    CHECK(ra.ssk.errors > 0);
}

TEST_CASE("Scenarios - strong phase noise degrades SSK but not DSK")
{
    RsuConfig cfg;
    cfg.sigma_df = 1e5;
    cfg.update_period = 1e-5;
    RsuDriveResult r = run_rsu_drive(cfg, 0.1, 84, {20.0});
    CHECK(r.ssk.ser >= 0.2);
    CHECK(r.dsk.ser <= 0.05);
}

TEST_CASE("Scenarios - RSU sweep columns are reproducible and worker-independent")
{
    RsuConfig cfg;
    std::vector<double> grid{1e-5, 1.17e-4};
    SerCurve a = run_rsu_sweep(cfg, RsuVariable::t_upd, grid, 0.02, 85, 1);
    SerCurve b = run_rsu_sweep(cfg, RsuVariable::t_upd, grid, 0.02, 85, 2);
    CHECK(same_curve(a, b));
    CHECK(a.points.size() == 4);
    CHECK_THROWS_AS(parse_rsu_variable("speed"), ConfigError);
    CHECK(rsu_at(cfg, RsuVariable::p_tx_dbm, 5.0).p_tx == Approx(dbm_to_watts(5.0)));
    CHECK(rsu_at(cfg, RsuVariable::rsu_spacing, 250.0).rsu_spacing == 250.0);
}
