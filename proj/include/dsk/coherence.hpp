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
#include <functional>

namespace dsk
{
    // Parameters of one coherence evaluation. The BS sits at the origin and the MD array centre
    // at distance d in direction theta; two MD antennas at (l1, phi1) and (l2, phi2).
    struct CoherenceQuery
    {
        double t_c = 0.0;            // s
        double speed = 30.0 / 3.6;   // m/s
        double distance = 100.0;     // d, m
        double wavelength = 0.01;    // m
        double bandwidth = 100e6;    // Hz
        double l1 = 0.1;
        double l2 = 0.1;
        double phi1 = 0.0;
        double phi2 = kPi;
        double theta = kPi / 4.0;
        double df = 0.0;       // Hz
        double df_prime = 0.0; // Hz
        double c = kSpeedOfLight;

        double f_max() const { return t_c * speed / wavelength; }
        double g_max() const { return t_c * speed / distance; }
        double step() const { return t_c * speed; }
    };

    struct QuadratureSpec
    {
        int node_count = 16;
        double relative_tolerance = 1e-8;

        void validate() const;
    };

    // J0 to double precision (backed by std::cyl_bessel_j).
    double bessel_j0(double x);

    struct CctValue
    {
        double value = 0.0;
        bool out_of_regime = false; // |df - df'| >= B; value is then 0
    };

    // ((B - |df - df'|)/B) |J0(2 pi f_max)|.
    CctValue j_cct(const CoherenceQuery &q);

    struct QCoefficients
    {
        double q1 = 0.0; // m
        double q2 = 0.0; // m
    };

    QCoefficients q_coefficients(const CoherenceQuery &q);

    // Largest displacement fraction t_c v / d accepted by the direction-coherence integral.
    inline constexpr double kDctRegimeLimit = 0.70710678118654752440;

    // Direction-coherence function from the heading-averaged far-field TDoA mismatch.
    // Throws OutOfRegime when t_c v >= d / sqrt 2.
    double j_dct_exact(const CoherenceQuery &q, const QuadratureSpec &spec = {});

    struct McEstimate
    {
        double value = 0.0;
        double standard_error = 0.0;
        std::size_t samples = 0;
    };

    // Monte Carlo over uniform headings with exact post-displacement geometry.
    McEstimate j_dct_mc(const CoherenceQuery &q, std::size_t n_samples, RandomStream &rng);

    // Deterministic counterpart of j_dct_mc: periodic trapezoid rule over the heading, exact geometry.
    // Valid for any step, including beyond the regime limit of j_dct_exact.
    double j_dct_heading_average(const CoherenceQuery &q, const QuadratureSpec &spec = {});

    // Density of theta_e for a uniform heading; zero outside |sin theta_e| <= step/d.
    double theta_e_density(double theta_e, double d, double step);

    // |J0(2 pi (l B / c) t_c v / d)|; requires l1 == l2.
    double j_dct_lower_bound(const CoherenceQuery &q);

    // Minimum of j_dct_exact over all antenna pairs of the array (element offsets only are used).
    double j_dct_array(const CoherenceQuery &q, const MdArray &array, const QuadratureSpec &spec = {});

    // Smallest t in (0, horizon] with |J(t)| <= threshold, found by a geometric scan and bisection.
    // Throws NoCrossing when J(0) <= threshold or no crossing occurs up to the horizon.
    double coherence_time(const std::function<double(double)> &J, double threshold, double horizon);

    // (d / lambda) (c / (l B)).
    double dct_cct_ratio(double d, double lambda, double l, double bandwidth, double c = kSpeedOfLight);
}
