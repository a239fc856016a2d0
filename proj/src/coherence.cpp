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

#include "dsk/coherence.hpp"
#include "dsk/errors.hpp"
#include "dsk/quadrature.hpp"
#include "dsk/waveform.hpp"

#include <cmath>
#include <string>

namespace dsk
{
    void QuadratureSpec::validate() const
    {
        if (node_count < 16)
            throw InvalidArgument("quadrature node_count must be >= 16");
        if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-3))
            throw InvalidArgument("quadrature tolerance must lie in (0, 1e-3]");
    }

    double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

    CctValue j_cct(const CoherenceQuery &q)
    {
        double mismatch = std::abs(q.df - q.df_prime);
        if (!(mismatch < q.bandwidth))
            return {0.0, true};
        double factor = (q.bandwidth - mismatch) / q.bandwidth;
        return {factor * std::abs(bessel_j0(kTwoPi * q.f_max())), false};
    }

    QCoefficients q_coefficients(const CoherenceQuery &q)
    {
        return {q.l2 * std::cos(q.theta - q.phi2) - q.l1 * std::cos(q.theta - q.phi1),
                q.l2 * std::sin(q.theta - q.phi2) - q.l1 * std::sin(q.theta - q.phi1)};
    }

    namespace
    {
        void check_query(const CoherenceQuery &q)
        {
            if (!(q.bandwidth > 0.0) || !(q.distance > 0.0) || !(q.c > 0.0))
                throw InvalidArgument("coherence query needs positive B, d and c");
            if (!(q.t_c >= 0.0) || !(q.speed >= 0.0))
                throw InvalidArgument("coherence query needs t_c >= 0 and speed >= 0");
        }
    }

    double j_dct_exact(const CoherenceQuery &q, const QuadratureSpec &spec)
    {
        check_query(q);
        spec.validate();
        double g = q.g_max();
        if (!(g < kDctRegimeLimit))
            throw OutOfRegime("direction coherence needs t_c v < d/sqrt(2); got t_c v / d = " + std::to_string(g));
        if (g == 0.0)
            return 1.0;
        auto [q1, q2] = q_coefficients(q);
        double k = kPi * q.bandwidth / q.c;
        // z = sin(theta_e) = g sin(u) maps the arcsine density to du/pi on [-pi/2, pi/2].
        auto f = [&](double u) {
            double z = g * std::sin(u);
            double one_minus_cos = z * z / (1.0 + std::sqrt(1.0 - z * z));
            return sinc(k * (q1 * one_minus_cos - q2 * z));
        };
        auto r = integrate_adaptive(f, -0.5 * kPi, 0.5 * kPi, spec.node_count, spec.relative_tolerance);
        return std::abs(r.value) / kPi;
    }

    namespace
    {
        // Exact TDoA mismatch (s) after displacing the array by `step` along `heading`.
        struct PairGeometry
        {
            MdArray array;
            Point2D bs{0.0, 0.0};
            double c;
            double tdoa0;

            explicit PairGeometry(const CoherenceQuery &q)
                : array(Point2D{q.distance * std::cos(q.theta), q.distance * std::sin(q.theta)},
                        {{q.l1, q.phi1}, {q.l2, q.phi2}}),
                  c(q.c), tdoa0(tdoa(array))
            {
            }

            double tdoa(const MdArray &a) const
            {
                return (distance(bs, a.element_position(1)) - distance(bs, a.element_position(0))) / c;
            }

            double mismatch(double speed, double t_c, double heading) const
            {
                return tdoa(displace(array, {speed, heading}, t_c)) - tdoa0;
            }
        };
    }

    McEstimate j_dct_mc(const CoherenceQuery &q, std::size_t n_samples, RandomStream &rng)
    {
        check_query(q);
        if (n_samples < 2)
            throw InvalidArgument("j_dct_mc needs at least 2 samples");
        PairGeometry geo(q);
        double k = kPi * q.bandwidth;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i)
        {
            double v = sinc(k * geo.mismatch(q.speed, q.t_c, rng.uniform(0.0, kTwoPi)));
            sum += v;
            sum2 += v * v;
        }
        double n = double(n_samples);
        double mean = sum / n;
        double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
        return {std::abs(mean), std::sqrt(var / n), n_samples};
    }

    double j_dct_heading_average(const CoherenceQuery &q, const QuadratureSpec &spec)
    {
        check_query(q);
        spec.validate();
        if (q.t_c == 0.0 || q.speed == 0.0)
            return 1.0;
        PairGeometry geo(q);
        double k = kPi * q.bandwidth;
        auto f = [&](double heading) { return sinc(k * geo.mismatch(q.speed, q.t_c, heading)); };
        auto r = periodic_mean(f, 4 * spec.node_count, spec.relative_tolerance);
        return std::abs(r.value);
    }

    double theta_e_density(double theta_e, double d, double step)
    {
        if (!(d > 0.0) || !(step > 0.0) || !(step < d))
            throw InvalidArgument("theta_e_density needs 0 < step < d");
        double ratio = d / step;
        double s = std::sin(theta_e) * ratio;
        double c = std::cos(theta_e);
        if (!(std::abs(s) < 1.0) || !(c > 0.0))
            return 0.0;
        return ratio * c / (kPi * std::sqrt(1.0 - s * s));
    }

    double j_dct_lower_bound(const CoherenceQuery &q)
    {
        check_query(q);
        if (q.l1 != q.l2)
            throw InvalidArgument("lower bound holds only for equal antenna radii (l1 == l2)");
        return std::abs(bessel_j0(kTwoPi * (q.l1 * q.bandwidth / q.c) * q.g_max()));
    }

    double j_dct_array(const CoherenceQuery &q, const MdArray &array, const QuadratureSpec &spec)
    {
        double worst = 1.0;
        const auto &el = array.elements();
        for (std::size_t i = 0; i < el.size(); ++i)
            for (std::size_t j = i + 1; j < el.size(); ++j)
            {
                CoherenceQuery p = q;
                p.l1 = el[i].radius;
                p.phi1 = el[i].angle;
                p.l2 = el[j].radius;
                p.phi2 = el[j].angle;
                worst = std::min(worst, j_dct_exact(p, spec));
            }
        return worst;
    }

    double coherence_time(const std::function<double(double)> &J, double threshold, double horizon)
    {
        if (!(horizon > 0.0))
            throw InvalidArgument("coherence_time needs a positive horizon");
        if (!(std::abs(J(0.0)) > threshold))
            throw NoCrossing("J(0) does not exceed the threshold " + std::to_string(threshold));

        // Geometric scan from horizon * 1e-12 upward, 32 points per decade.
        constexpr int per_decade = 32;
        constexpr int decades = 12;
        double lo = 0.0;
        double hi = -1.0;
        for (int i = 0; i <= per_decade * decades; ++i)
        {
            double t = horizon * std::pow(10.0, -decades + double(i) / per_decade);
            if (std::abs(J(t)) <= threshold)
            {
                hi = t;
                break;
            }
            lo = t;
        }
        if (hi < 0.0)
            throw NoCrossing("no threshold crossing up to t = " + std::to_string(horizon) + " s");

        // Invariant: |J(lo)| > threshold >= |J(hi)|.
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it)
        {
            double mid = 0.5 * (lo + hi);
            if (std::abs(J(mid)) <= threshold)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    double dct_cct_ratio(double d, double lambda, double l, double bandwidth, double c)
    {
        if (!(d > 0.0) || !(lambda > 0.0) || !(l > 0.0) || !(bandwidth > 0.0) || !(c > 0.0))
            throw InvalidArgument("dct_cct_ratio needs positive inputs");
        return (d / lambda) * (c / (l * bandwidth));
    }
}
