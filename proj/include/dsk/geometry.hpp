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

#include <cmath>
#include <cstddef>
#include <vector>

namespace dsk
{
    inline constexpr double kSpeedOfLight = 3.0e8;
    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kTwoPi = 2.0 * kPi;

    struct Point2D
    {
        double x = 0.0;
        double y = 0.0;

        Point2D operator+(Point2D o) const { return {x + o.x, y + o.y}; }
        Point2D operator-(Point2D o) const { return {x - o.x, y - o.y}; }
        Point2D operator*(double s) const { return {x * s, y * s}; }
        bool operator==(const Point2D &) const = default;
    };

    double norm(Point2D p);
    double distance(Point2D a, Point2D b);

    // Maps any finite angle to [0, 2pi).
    double wrap_angle(double a);

    // Maps any finite angle to (-pi, pi].
    double wrap_angle_signed(double a);

    struct ArrayElement
    {
        double radius = 0.0; // l_n >= 0
        double angle = 0.0;  // phi_n in [0, 2pi)
    };

    // Rigid receive array. Element n sits at center + l_n (cos phi_n, sin phi_n).
    class MdArray
    {
    public:
        MdArray(Point2D center, std::vector<ArrayElement> elements);

        // N elements at radius r and angles k 2pi/N.
        static MdArray uniform_circular(Point2D center, std::size_t n, double radius);

        // N elements spaced along the axis at `axis_angle`, centred on `center`.
        static MdArray uniform_linear(Point2D center, std::size_t n, double spacing, double axis_angle);

        Point2D center() const { return center_; }
        std::size_t size() const { return elements_.size(); }
        const std::vector<ArrayElement> &elements() const { return elements_; }
        Point2D element_position(std::size_t n) const;

        // Largest element radius.
        double aperture_radius() const;

    private:
        Point2D center_;
        std::vector<ArrayElement> elements_;
    };

    struct MobilityState
    {
        double speed = 0.0;   // m/s, >= 0
        double heading = 0.0; // radians, [0, 2pi)
    };

    // Infinite reflector through `point` along `direction`.
    struct ReflectionLine
    {
        Point2D point;
        Point2D direction;
    };

    // TDoA signature of one transmitter. deltas[k] = tau_{k+1} - tau_0 (0-based antennas),
    // so delay(0) == 0 and delay(k) == deltas[k-1].
    class TdoaFingerprint
    {
    public:
        TdoaFingerprint(std::size_t transmitter_index, std::vector<double> deltas, double carrier);

        std::size_t transmitter_index() const { return transmitter_index_; }
        const std::vector<double> &deltas() const { return deltas_; }
        double carrier() const { return carrier_; }
        std::size_t antenna_count() const { return deltas_.size() + 1; }

        double delay(std::size_t k) const { return k == 0 ? 0.0 : deltas_[k - 1]; }

        // delay(l) - delay(k).
        double pair_delay(std::size_t l, std::size_t k) const { return delay(l) - delay(k); }

    private:
        std::size_t transmitter_index_;
        std::vector<double> deltas_;
        double carrier_;
    };

    double toa(Point2D tx, Point2D rx, double c = kSpeedOfLight);

    Point2D mirror_image(Point2D tx, const ReflectionLine &line);

    TdoaFingerprint fingerprint(Point2D tx, const MdArray &array, double c, double f_c,
                                std::size_t transmitter_index = 0);

    // Per-element times of arrival.
    std::vector<double> arrival_times(Point2D tx, const MdArray &array, double c = kSpeedOfLight);

    // Rigid translation by t_c * speed along heading; element offsets unchanged.
    MdArray displace(const MdArray &array, const MobilityState &mobility, double t_c);

    // theta - theta' where d' e^{j theta'} = d e^{j theta} + step e^{j heading}. Result in (-pi, pi].
    double theta_e(double d, double theta, double step, double heading);
}
