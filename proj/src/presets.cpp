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

#include "dsk/presets.hpp"
#include "dsk/coherence.hpp"
#include "dsk/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <algorithm>

#ifndef DSK_GIT_DESCRIBE
#define DSK_GIT_DESCRIBE "unknown"
#endif

namespace dsk
{
    std::string build_describe() { return DSK_GIT_DESCRIBE; }

    void RunSettings::apply(ExperimentConfig &cfg) const
    {
        if (seed)
            cfg.seed = *seed;
        if (trials)
            cfg.trials = *trials;
        if (output)
            cfg.output = *output;
        if (workers)
            cfg.workers = *workers;
        try
        {
            cfg.validate();
        }
        catch (const InvalidArgument &e)
        {
            throw ConfigError(e.what());
        }
    }

    namespace
    {
        std::string short_num(double x)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", x);
            return buf;
        }

        struct Series
        {
            std::string suffix;
            std::string description;
            std::function<void(ExperimentConfig &)> apply;
        };

        struct PresetDef
        {
            PresetInfo info;
            std::function<ExperimentConfig()> base;
            std::vector<Series> series;
        };

        const std::vector<double> kDecadesSigma{1, 1e1, 1e2, 1e3, 1e4, 1e5};

        Series update_series(double t_upd)
        {
            return {"_tupd" + short_num(t_upd), "rsu.update_period=" + short_num(t_upd),
                    [t_upd](ExperimentConfig &c) { c.rsu.update_period = t_upd; }};
        }

        const std::vector<PresetDef> &definitions()
        {
            static const std::vector<PresetDef> defs = [] {
                std::vector<PresetDef> d;

                d.push_back({{"fig-ser-snr", "circular cell, SER vs array SNR for M = 4 and 16, static MD"},
                             [] {
                                 ExperimentConfig c;
                                 c.kind = ScenarioKind::circular;
                                 c.sweep = {SweepVariable::snr_db, {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, {}};
                                 c.sweep.fixed.t_c = 0.0;
                                 c.sweep.fixed.sigma_df = 0.0;
                                 return c;
                             },
                             {{"_m4", "circular.M=4", [](ExperimentConfig &c) { c.circular.M = 4; }},
                              {"_m16", "circular.M=16", [](ExperimentConfig &c) { c.circular.M = 16; }}}});

                std::vector<Series> speeds;
                for (double v : {5.0, 10.0, 30.0})
                    speeds.push_back({"_v" + short_num(v), "circular.speed=" + short_num(v),
                                      [v](ExperimentConfig &c) { c.circular.speed = v; }});
                d.push_back({{"fig-ser-tc", "circular cell, SER vs elapsed time since reference, M = 4, 14 dB"},
                             [] {
                                 ExperimentConfig c;
                                 c.sweep = {SweepVariable::t_c, {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}, {}};
                                 c.sweep.fixed.snr_db = 14.0;
                                 return c;
                             },
                             speeds});

                std::vector<Series> snrs;
                for (double s : {10.0, 14.0})
                    snrs.push_back({"_snr" + short_num(s), "sweep.snr_db=" + short_num(s),
                                    [s](ExperimentConfig &c) { c.sweep.fixed.snr_db = s; }});
                d.push_back({{"fig-phase-noise", "circular cell, SER vs frequency-offset std, M = 4, t_c = 0.1 ms"},
                             [] {
                                 ExperimentConfig c;
                                 c.sweep = {SweepVariable::sigma_df, kDecadesSigma, {}};
                                 c.sweep.fixed.t_c = 1e-4;
                                 return c;
                             },
                             snrs});

                std::vector<Series> powers;
                for (double p : {5.0, 10.0, 12.0})
                    powers.push_back({"_p" + short_num(p) + "dbm", "rsu.p_tx_dbm=" + short_num(p),
                                      [p](ExperimentConfig &c) { c.rsu.p_tx = dbm_to_watts(p); }});
                d.push_back({{"rsu-tupd", "RSU drive, SER vs update period (pilot overhead columns)"},
                             [] {
                                 ExperimentConfig c;
                                 c.kind = ScenarioKind::rsu;
                                 c.rsu_variable = RsuVariable::t_upd;
                                 return c;
                             },
                             powers});

                d.push_back({{"rsu-distance", "RSU drive, SER vs RSU spacing for three update periods, 12 dBm"},
                             [] {
                                 ExperimentConfig c;
                                 c.kind = ScenarioKind::rsu;
                                 c.rsu_variable = RsuVariable::rsu_spacing;
                                 c.rsu_grid = {50, 100, 150, 200, 250, 300};
                                 return c;
                             },
                             {update_series(1e-5), update_series(1e-4), update_series(1e-3)}});

                d.push_back({{"rsu-phasenoise", "RSU drive, SER vs oscillator linewidth std for three update periods"},
                             [] {
                                 ExperimentConfig c;
                                 c.kind = ScenarioKind::rsu;
                                 c.rsu_variable = RsuVariable::sigma_df;
                                 c.rsu_grid = kDecadesSigma;
                                 return c;
                             },
                             {update_series(1e-5), update_series(1e-4), update_series(1e-3)}});

                d.push_back({{"coherence-curves", "channel and direction coherence functions and the lower bound"},
                             [] {
                                 ExperimentConfig c;
                                 c.kind = ScenarioKind::coherence;
                                 return c;
                             },
                             {}});
                return d;
            }();
            return defs;
        }

        const PresetDef &find_preset(const std::string &name)
        {
            for (const auto &p : definitions())
                if (p.info.name == name)
                    return p;
            std::string names;
            for (const auto &p : definitions())
                names += (names.empty() ? "" : ", ") + p.info.name;
            throw ConfigError("unknown preset '" + name + "'; valid presets: " + names);
        }

        std::filesystem::path ensure_dir(const std::string &dir)
        {
            std::filesystem::path p(dir.empty() ? "." : dir);
            std::error_code ec;
            std::filesystem::create_directories(p, ec);
            if (ec)
                throw ConfigError("cannot create output directory '" + p.string() + "': " + ec.message());
            return p;
        }

        void write_file(const std::filesystem::path &path, const std::string &body)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw ConfigError("cannot write '" + path.string() + "'");
            f << body;
        }

        std::string meta_text(const std::string &name, const ExperimentConfig &cfg, const std::vector<Series> &series,
                              double wall)
        {
            std::string m;
            m += "; run metadata\n[meta]\n";
            m += "name = " + name + "\n";
            m += "seed = " + std::to_string(cfg.seed) + "\n";
            m += "config_hash = " + config_hash(cfg) + "\n";
            m += "build = " + build_describe() + "\n";
            m += "wall_seconds = " + format_number(wall) + "\n";
            for (std::size_t i = 0; i < series.size(); ++i)
                m += "series" + std::to_string(i) + " = " + series[i].suffix + ": " + series[i].description + "\n";
            m += "\n" + serialize(cfg);
            return m;
        }

        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        SerCurve run_curve(const ExperimentConfig &cfg, const std::string &suffix)
        {
            if (cfg.kind == ScenarioKind::rsu)
                return run_rsu_sweep(cfg.rsu_config(), cfg.rsu_variable, cfg.rsu_grid, cfg.rsu_duration, cfg.seed,
                                     cfg.workers, suffix);
            auto cell = build_circular_cell(cfg.circular_config());
            return run_ser_sweep(cell, cfg.sweep, cfg.trials, cfg.seed, cfg.workers, suffix);
        }

        RunOutput emit_ser(const std::string &name, const ExperimentConfig &base, const std::vector<Series> &series)
        {
            auto t0 = Clock::now();
            auto dir = ensure_dir(base.output);
            std::string csv;
            {
                std::ostringstream os;
                bool first = true;
                auto add = [&](const SerCurve &curve, const ExperimentConfig &cfg) {
                    std::ostringstream part;
                    write_ser_csv(part, curve, cfg.seed, config_hash(cfg));
                    std::string s = part.str();
                    if (!first)
                        s = s.substr(s.find('\n') + 1); // header once
                    first = false;
                    os << s;
                };
                if (series.empty())
                    add(run_curve(base, ""), base);
                for (const auto &s : series)
                {
                    ExperimentConfig cfg = base;
                    s.apply(cfg);
                    add(run_curve(cfg, s.suffix), cfg);
                }
                csv = os.str();
            }
            RunOutput out;
            out.name = name;
            out.csv = dir / (name + ".csv");
            out.meta = dir / (name + ".meta");
            write_file(out.csv, csv);
            out.rows = std::size_t(std::count(csv.begin(), csv.end(), '\n')) - 1;
            out.wall_seconds = seconds_since(t0);
            write_file(out.meta, meta_text(name, base, series, out.wall_seconds));
            return out;
        }
    }

    const std::vector<PresetInfo> &preset_list()
    {
        static const std::vector<PresetInfo> list = [] {
            std::vector<PresetInfo> l;
            for (const auto &d : definitions())
                l.push_back(d.info);
            return l;
        }();
        return list;
    }

    ExperimentConfig preset_config(const std::string &name) { return find_preset(name).base(); }

    std::vector<CoherenceRow> coherence_curves(const ExperimentConfig &cfg)
    {
        const auto &cc = cfg.coherence;
        cc.validate(cfg.c);
        std::vector<CoherenceRow> rows(cc.points);
        QuadratureSpec spec{cc.node_count, cc.tolerance};
        parallel_for(rows.size(), cfg.workers, [&](std::size_t i) {
            double frac = double(i) / double(cc.points - 1);
            double t = cc.t_min * std::pow(cc.t_max / cc.t_min, frac);
            if (i + 1 == cc.points)
                t = cc.t_max;
            CoherenceQuery q;
            q.t_c = t;
            q.speed = cc.speed;
            q.distance = cc.distance;
            q.wavelength = cfg.c / cc.f_c;
            q.bandwidth = cc.bandwidth;
            q.l1 = q.l2 = cc.l;
            q.phi1 = cc.phi1;
            q.phi2 = cc.phi2;
            q.theta = cc.theta;
            q.c = cfg.c;
            rows[i] = {t, j_cct(q).value, j_dct_exact(q, spec), j_dct_lower_bound(q)};
        });
        return rows;
    }

    void write_ser_csv(std::ostream &os, const SerCurve &curve, std::uint64_t seed, const std::string &hash)
    {
        os << "sweep_value,detector,trials,errors,ser,ci_low,ci_high,overhead,mean_snr_db,seed,config_hash\n";
        for (const auto &p : curve.points)
            os << format_number(p.x) << ',' << p.detector << ',' << p.trials << ',' << p.errors << ','
               << format_number(p.ser) << ',' << format_number(p.ci_low) << ',' << format_number(p.ci_high) << ','
               << format_number(p.overhead) << ',' << format_number(p.mean_snr_db) << ',' << seed << ',' << hash
               << '\n';
    }

    void write_coherence_csv(std::ostream &os, const std::vector<CoherenceRow> &rows)
    {
        os << "t_c,j_cct,j_dct_exact,j_dct_bound\n";
        for (const auto &r : rows)
            os << format_number(r.t_c) << ',' << format_number(r.j_cct) << ',' << format_number(r.j_dct_exact) << ','
               << format_number(r.j_dct_bound) << '\n';
    }

    RunOutput run_coherence(const ExperimentConfig &cfg, const std::string &name)
    {
        auto t0 = Clock::now();
        auto dir = ensure_dir(cfg.output);
        std::ostringstream os;
        auto rows = coherence_curves(cfg);
        write_coherence_csv(os, rows);
        RunOutput out;
        out.name = name;
        out.csv = dir / (name + ".csv");
        out.meta = dir / (name + ".meta");
        out.rows = rows.size();
        write_file(out.csv, os.str());
        out.wall_seconds = seconds_since(t0);
        write_file(out.meta, meta_text(name, cfg, {}, out.wall_seconds));
        return out;
    }

    RunOutput run_sweep(const ExperimentConfig &cfg, const std::string &name)
    {
        ExperimentConfig c = cfg;
        c.kind = ScenarioKind::circular;
        return emit_ser(name, c, {});
    }

    RunOutput run_rsu(const ExperimentConfig &cfg, const std::string &name)
    {
        ExperimentConfig c = cfg;
        c.kind = ScenarioKind::rsu;
        return emit_ser(name, c, {});
    }

    RunOutput run_preset(const std::string &name, const RunSettings &settings)
    {
        const auto &def = find_preset(name);
        ExperimentConfig cfg = def.base();
        settings.apply(cfg);
        if (cfg.kind == ScenarioKind::coherence)
            return run_coherence(cfg, name);
        return emit_ser(name, cfg, def.series);
    }
}
