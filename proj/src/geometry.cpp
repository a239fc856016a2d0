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

#include "dsk/geometry.hpp"
#include "dsk/errors.hpp"

#include <algorithm>
#include <string>

namespace dsk
{
    double norm(Point2D p) { return std::hypot(p.x, p.y); }

    double distance(Point2D a, Point2D b) { return norm(a - b); }

    double wrap_angle(double a)
    {
        double r = std::fmod(a, kTwoPi);
        if (r < 0.0)
            r += kTwoPi;
        if (r >= kTwoPi) // fmod rounding for tiny negative inputs
            r = 0.0;
        return r;
    }

    double wrap_angle_signed(double a)
    {
        double r = wrap_angle(a);
        return r > kPi ? r - kTwoPi : r;
    }

    MdArray::MdArray(Point2D center, std::vector<ArrayElement> elements)
        : center_(center), elements_(std::move(elements))
    {
        if (elements_.size() < 2)
            throw InvalidArgument("MdArray needs at least 2 elements, got " + std::to_string(elements_.size()));
        if (!std::isfinite(center_.x) || !std::isfinite(center_.y))
            throw InvalidArgument("MdArray center must be finite");
        for (auto &e : elements_)
        {
            if (!(e.radius >= 0.0) || !std::isfinite(e.radius))
                throw InvalidArgument("MdArray element radius must be finite and >= 0");
            e.angle = wrap_angle(e.angle);
        }
    }

    MdArray MdArray::uniform_circular(Point2D center, std::size_t n, double radius)
    {
        std::vector<ArrayElement> el(n);
        for (std::size_t k = 0; k < n; ++k)
            el[k] = {radius, kTwoPi * double(k) / double(n)};
        return MdArray(center, std::move(el));
    }

    MdArray MdArray::uniform_linear(Point2D center, std::size_t n, double spacing, double axis_angle)
    {
        std::vector<ArrayElement> el(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            double offset = (double(k) - 0.5 * double(n - 1)) * spacing;
            el[k] = {std::abs(offset), offset >= 0.0 ? axis_angle : axis_angle + kPi};
        }
        return MdArray(center, std::move(el));
    }

    Point2D MdArray::element_position(std::size_t n) const
    {
        const auto &e = elements_.at(n);
        return {center_.x + e.radius * std::cos(e.angle), center_.y + e.radius * std::sin(e.angle)};
    }

    double MdArray::aperture_radius() const
    {
        double r = 0.0;
        for (const auto &e : elements_)
            r = std::max(r, e.radius);
        return r;
    }

    TdoaFingerprint::TdoaFingerprint(std::size_t transmitter_index, std::vector<double> deltas, double carrier)
        : transmitter_index_(transmitter_index), deltas_(std::move(deltas)), carrier_(carrier)
    {
        if (deltas_.empty())
            throw InvalidArgument("TdoaFingerprint needs at least 2 antennas");
    }

    double toa(Point2D tx, Point2D rx, double c)
    {
        if (!(c > 0.0))
            throw InvalidArgument("propagation speed must be positive");
        return distance(tx, rx) / c;
    }

    Point2D mirror_image(Point2D tx, const ReflectionLine &line)
    {
        double len = norm(line.direction);
        if (!(len > 0.0))
            throw InvalidArgument("reflection line direction has zero length");
        Point2D u = line.direction * (1.0 / len);
        Point2D r = tx - line.point;
        double along = r.x * u.x + r.y * u.y;
        Point2D foot = line.point + u * along;
        return foot * 2.0 - tx;
    }

    std::vector<double> arrival_times(Point2D tx, const MdArray &array, double c)
    {
        std::vector<double> t(array.size());
        for (std::size_t n = 0; n < array.size(); ++n)
            t[n] = toa(tx, array.element_position(n), c);
        return t;
    }

    TdoaFingerprint fingerprint(Point2D tx, const MdArray &array, double c, double f_c, std::size_t transmitter_index)
    {
        auto t = arrival_times(tx, array, c);
        std::vector<double> deltas(t.size() - 1);
        for (std::size_t k = 1; k < t.size(); ++k)
            deltas[k - 1] = t[k] - t[0];
        return TdoaFingerprint(transmitter_index, std::move(deltas), f_c);
    }

    MdArray displace(const MdArray &array, const MobilityState &mobility, double t_c)
    {
        if (!(t_c >= 0.0))
            throw InvalidArgument("displacement time must be >= 0");
        double step = t_c * mobility.speed;
        Point2D c = array.center() + Point2D{std::cos(mobility.heading), std::sin(mobility.heading)} * step;
        return MdArray(c, array.elements());
    }

    double theta_e(double d, double theta, double step, double heading)
    {
        if (!(step < d))
            throw OutOfRegime("theta_e requires step < d");
        if (step == 0.0)
            return 0.0;
        // arg of e^{j theta} conj(d' e^{j theta'}), evaluated in the frame rotated by theta.
        double rel = heading - theta;
        return -std::atan2(step * std::sin(rel), d + step * std::cos(rel));
    }
}
