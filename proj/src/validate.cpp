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

#include "dsk/validate.hpp"
#include "dsk/coherence.hpp"
#include "dsk/detection.hpp"
#include "dsk/geometry.hpp"
#include "dsk/impairments.hpp"
#include "dsk/waveform.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace dsk
{
    namespace
    {
        CheckResult check(std::string name, double value, double expected, double tol, std::string detail)
        {
            CheckResult r;
            r.name = std::move(name);
            r.value = value;
            r.expected = expected;
            r.tolerance = tol;
            r.passed = std::isfinite(value) && std::abs(value - expected) <= tol;
            r.detail = std::move(detail);
            return r;
        }

        // Largest |sampled autocorrelation - kernel| over [-4T, 4T], relative to E_s.
        CheckResult kernel_parseval()
        {
            SincPulse p{100e6};
            GridSpec spec{16, 64};
            auto g = synthesize(p, 1.0, 0.0, 30e9, 0.0, spec);
            CrossCorrelator xc(g, g);
            double worst = 0.0;
            for (int i = 0; i <= 100; ++i)
            {
                double delta = (-4.0 + 8.0 * i / 100.0) * p.period();
                worst = std::max(worst, std::abs(xc.at(delta) - kernel(p, delta)) / p.energy());
            }
            // A window of +-W T keeps all but 1/(pi^2 W) of the pulse energy.
            double bound = 1.0 / (kPi * kPi * spec.half_width);
            return check("kernel/Parseval", worst, 0.0, 1.05 * bound,
                         "sampled autocorrelation vs kernel, kappa=16, W=64, within the truncation loss");
        }

        CheckResult pair_identity(double c)
        {
            // Noiseless observation from the true transmitter: every weighted pair term equals rho^2 E_s.
            SincPulse p{100e6};
            auto array = MdArray::uniform_circular({12.0, -30.0}, 7, 0.1);
            Point2D tx{100.0, 0.0};
            double rho = 0.7;
            auto tau = arrival_times(tx, array, c);
            std::vector<cplx> gains(tau.size());
            std::vector<double> delays(tau.size());
            for (std::size_t n = 0; n < tau.size(); ++n)
            {
                gains[n] = rho * std::polar(1.0, -kTwoPi * std::fmod(30e9 * tau[n], 1.0));
                delays[n] = tau[n] - tau[0];
            }
            RandomStream rng(1);
            Observation obs = make_analytic_observation(p, gains, delays, 0.0, 0, rng);
            DskReference ref({fingerprint(tx, array, c, 30e9, 0)});
            double worst = 0.0;
            double target = rho * rho * p.energy();
            for (const auto &t : dsk_pair_terms(obs, ref, 0))
                worst = std::max(worst, std::abs(t - target) / target);
            return check("pair-term identity", worst, 0.0, 1e-9, "noiseless m = v pair terms vs rho^2 E_s");
        }

        CheckResult bound_ordering(double c)
        {
            double worst = 1.0;
            for (double bw : {100e6, 1e9})
                for (int ti = 1; ti <= 20; ++ti)
                    for (int hi = 0; hi < 5; ++hi)
                    {
                        CoherenceQuery q;
                        q.c = c;
                        q.bandwidth = bw;
                        q.t_c = 0.7 * q.distance / q.speed * ti / 20.0 * 0.999;
                        q.theta = kPi * hi / 5.0;
                        worst = std::min(worst, j_dct_exact(q) - j_dct_lower_bound(q));
                    }
            CheckResult r;
            r.name = "lower-bound ordering";
            r.value = worst;
            r.expected = 0.0;
            r.tolerance = 1e-6;
            r.passed = worst >= -1e-6;
            r.detail = "min over the grid of exact - bound (must be >= -1e-6)";
            return r;
        }

        CheckResult theta_e_constraint()
        {
            double worst = 0.0;
            RandomStream rng(7);
            for (int i = 0; i < 1000; ++i)
            {
                double d = rng.uniform(1.0, 500.0);
                double step = rng.uniform(0.0, 0.99) * d;
                double theta = rng.uniform(0.0, kTwoPi);
                double heading = rng.uniform(0.0, kTwoPi);
                double te = theta_e(d, theta, step, heading);
                double theta_new = theta - te;
                // Residual in radians: divide the length residual by d.
                double resid = (d * std::sin(te) + step * std::sin(heading - theta_new)) / d;
                worst = std::max(worst, std::abs(resid));
            }
            return check("theta_e constraint", worst, 0.0, 1e-12, "d sin(theta_e) + step sin(heading - theta') = 0");
        }

        CheckResult bessel_anchor()
        {
            return check("J0(9/8) anchor", bessel_j0(9.0 / 8.0), 1.0 / std::sqrt(2.0), 2e-3, "J0(9/8) vs 1/sqrt(2)");
        }

        CheckResult snr_budget(double c)
        {
            LinkBudget b{dbm_to_watts(5.0), 30e9, 1e-12, c};
            auto s = snr(b, 50.0, 5);
            auto r = check("SNR budget", s.per_antenna, 0.801, 0.005 * 0.801,
                           "P_tx = 5 dBm, d = 50 m, f_c = 30 GHz, sigma2 = 1e-12 W");
            double gain = s.array_db - s.per_antenna_db;
            if (std::abs(gain - 10.0 * std::log10(5.0)) > 1e-12)
            {
                r.passed = false;
                r.detail += "; array gain mismatch";
            }
            return r;
        }
    }

    std::vector<CheckResult> validate(const ExperimentConfig &cfg)
    {
        return {kernel_parseval(), pair_identity(cfg.c), bound_ordering(cfg.c),
                theta_e_constraint(), bessel_anchor(), snr_budget(cfg.c)};
    }

    void print_report(std::ostream &os, const std::vector<CheckResult> &checks, bool color)
    {
        const char *green = color ? "\033[32m" : "";
        const char *red = color ? "\033[31m" : "";
        const char *reset = color ? "\033[0m" : "";
        char buf[256];
        for (const auto &c : checks)
        {
            std::snprintf(buf, sizeof buf, "%s%-4s%s  %-22s value=%-14.8g expected=%-12.8g tol=%-10.3g ", 
                          c.passed ? green : red, c.passed ? "PASS" : "FAIL", reset, c.name.c_str(), c.value,
                          c.expected, c.tolerance);
            os << buf << c.detail << '\n';
        }
        std::size_t failed = std::size_t(std::count_if(checks.begin(), checks.end(), [](auto &c) { return !c.passed; }));
        os << (failed ? "FAILED: " : "all checks passed: ") << (checks.size() - failed) << "/" << checks.size()
           << " passed\n";
    }

    std::string report_json(const std::vector<CheckResult> &checks)
    {
        nlohmann::json j;
        j["checks"] = nlohmann::json::array();
        bool all = true;
        for (const auto &c : checks)
        {
            j["checks"].push_back({{"name", c.name},
                                   {"passed", c.passed},
                                   {"value", c.value},
                                   {"expected", c.expected},
                                   {"tolerance", c.tolerance},
                                   {"detail", c.detail}});
            all = all && c.passed;
        }
        j["passed"] = all;
        return j.dump(2);
    }
}
