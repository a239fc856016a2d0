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

#include "dsk/config.hpp"
#include "dsk/coherence.hpp"
#include "dsk/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace dsk
{
    std::string to_string(ScenarioKind k)
    {
        switch (k)
        {
        case ScenarioKind::circular:
            return "circular";
        case ScenarioKind::rsu:
            return "rsu";
        case ScenarioKind::coherence:
            return "coherence";
        }
        return "?";
    }

    std::string format_number(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17e", x);
        return buf;
    }

    void CoherenceCurveConfig::validate(double c) const
    {
        if (!(distance > 0.0) || !(speed > 0.0) || !(f_c > 0.0) || !(bandwidth > 0.0) || !(l > 0.0))
            throw InvalidArgument("coherence: distance, speed, f_c, bandwidth and l must be positive");
        if (!(t_min > 0.0) || !(t_max > t_min))
            throw InvalidArgument("coherence: need 0 < t_min < t_max");
        if (!(t_max * speed < kDctRegimeLimit * distance))
            throw InvalidArgument("coherence: t_max * speed must stay below distance / sqrt(2)");
        if (points < 2)
            throw InvalidArgument("coherence: need at least 2 points");
        QuadratureSpec{node_count, tolerance}.validate();
        (void)c;
    }

    CircularCellConfig ExperimentConfig::circular_config() const
    {
        CircularCellConfig cc = circular;
        cc.c = c;
        return cc;
    }

    RsuConfig ExperimentConfig::rsu_config() const
    {
        RsuConfig r = rsu;
        r.c = c;
        return r;
    }

    void ExperimentConfig::validate() const
    {
        if (!(c > 0.0))
            throw InvalidArgument("physics.c must be positive");
        if (trials < 1)
            throw InvalidArgument("experiment.trials must be >= 1");
        circular_config().validate();
        if (sweep.grid.empty())
            throw InvalidArgument("sweep.grid must not be empty");
        rsu_config().validate();
        if (!(rsu.vehicle_speed > 0.0) && !(rsu_duration > 0.0))
            throw InvalidArgument("rsu.vehicle_speed must be positive when rsu.duration is not set");
        if (rsu_grid.empty())
            throw InvalidArgument("rsu.grid must not be empty");
        coherence.validate(c);
    }

    bool ExperimentConfig::operator==(const ExperimentConfig &o) const { return serialize(*this) == serialize(o); }

    namespace
    {
        struct Field
        {
            const char *section;
            const char *key;
            std::function<void(ExperimentConfig &, const std::string &)> set;
            std::function<std::string(const ExperimentConfig &)> get; // empty: input-only alias
        };

        std::string trim(const std::string &s)
        {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return "";
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double to_double(const std::string &s)
        {
            std::string t = trim(s);
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(t, &used);
            }
            catch (const std::exception &)
            {
                throw ConfigError("'" + t + "' is not a number");
            }
            if (used != t.size())
                throw ConfigError("'" + t + "' is not a number");
            return v;
        }

        std::uint64_t to_uint(const std::string &s)
        {
            std::string t = trim(s);
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigError("'" + t + "' is not a non-negative integer");
            try
            {
                return std::stoull(t);
            }
            catch (const std::exception &)
            {
                throw ConfigError("'" + t + "' is out of range");
            }
        }

        std::vector<double> to_grid(const std::string &s)
        {
            std::vector<double> g;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!trim(item).empty())
                    g.push_back(to_double(item));
            if (g.empty())
                throw ConfigError("grid must list at least one value");
            return g;
        }

        std::string grid_text(const std::vector<double> &g)
        {
            std::string out;
            for (std::size_t i = 0; i < g.size(); ++i)
            {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", g[i]);
                out += (i ? ", " : "") + std::string(buf);
            }
            return out;
        }

        std::string num(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

#define DSK_DOUBLE(sec, name, expr)                                                                                   \
    Field { sec, name, [](ExperimentConfig &c, const std::string &v) { c.expr = to_double(v); },                      \
            [](const ExperimentConfig &c) { return num(c.expr); } }
#define DSK_UINT(sec, name, expr, type)                                                                               \
    Field { sec, name, [](ExperimentConfig &c, const std::string &v) { c.expr = type(to_uint(v)); },                  \
            [](const ExperimentConfig &c) { return std::to_string(c.expr); } }

        const std::vector<Field> &fields()
        {
            static const std::vector<Field> table = {
                Field{"experiment", "kind",
                      [](ExperimentConfig &c, const std::string &v) {
                          std::string t = trim(v);
                          if (t == "circular")
                              c.kind = ScenarioKind::circular;
                          else if (t == "rsu")
                              c.kind = ScenarioKind::rsu;
                          else if (t == "coherence")
                              c.kind = ScenarioKind::coherence;
                          else
                              throw ConfigError("kind must be circular, rsu or coherence, got '" + t + "'");
                      },
                      [](const ExperimentConfig &c) { return to_string(c.kind); }},
                DSK_UINT("experiment", "seed", seed, std::uint64_t),
                DSK_UINT("experiment", "trials", trials, std::size_t),
                Field{"experiment", "output", [](ExperimentConfig &c, const std::string &v) { c.output = trim(v); },
                      [](const ExperimentConfig &c) { return c.output; }},
                DSK_UINT("experiment", "workers", workers, unsigned),
                DSK_DOUBLE("physics", "c", c),

                DSK_DOUBLE("circular", "cell_radius", circular.cell_radius),
                DSK_UINT("circular", "M", circular.M, std::size_t),
                DSK_UINT("circular", "N", circular.N, std::size_t),
                DSK_DOUBLE("circular", "array_radius", circular.array_radius),
                DSK_DOUBLE("circular", "f_c", circular.f_c),
                DSK_DOUBLE("circular", "bandwidth", circular.bandwidth),
                DSK_DOUBLE("circular", "speed", circular.speed),
                DSK_DOUBLE("circular", "min_tx_distance", circular.min_tx_distance),
                DSK_UINT("circular", "noise_half_width", circular.noise_half_width, int),

                Field{"sweep", "variable",
                      [](ExperimentConfig &c, const std::string &v) { c.sweep.variable = parse_sweep_variable(trim(v)); },
                      [](const ExperimentConfig &c) { return to_string(c.sweep.variable); }},
                Field{"sweep", "grid", [](ExperimentConfig &c, const std::string &v) { c.sweep.grid = to_grid(v); },
                      [](const ExperimentConfig &c) { return grid_text(c.sweep.grid); }},
                DSK_DOUBLE("sweep", "snr_db", sweep.fixed.snr_db),
                DSK_DOUBLE("sweep", "t_c", sweep.fixed.t_c),
                DSK_DOUBLE("sweep", "sigma_df", sweep.fixed.sigma_df),

                DSK_DOUBLE("rsu", "rsu_spacing", rsu.rsu_spacing),
                DSK_DOUBLE("rsu", "lateral_offset", rsu.lateral_offset),
                DSK_UINT("rsu", "N", rsu.N, std::size_t),
                DSK_DOUBLE("rsu", "element_spacing", rsu.element_spacing),
                DSK_DOUBLE("rsu", "array_axis", rsu.array_axis),
                DSK_UINT("rsu", "M", rsu.M, std::size_t),
                DSK_UINT("rsu", "pilots", rsu.pilots, std::size_t),
                DSK_DOUBLE("rsu", "symbol_period", rsu.symbol_period),
                DSK_DOUBLE("rsu", "update_period", rsu.update_period),
                DSK_DOUBLE("rsu", "p_tx", rsu.p_tx),
                Field{"rsu", "p_tx_dbm",
                      [](ExperimentConfig &c, const std::string &v) { c.rsu.p_tx = dbm_to_watts(to_double(v)); },
                      nullptr},
                DSK_DOUBLE("rsu", "sigma2", rsu.sigma2),
                DSK_DOUBLE("rsu", "sigma_df", rsu.sigma_df),
                DSK_DOUBLE("rsu", "vehicle_speed", rsu.vehicle_speed),
                DSK_DOUBLE("rsu", "f_c", rsu.f_c),
                Field{"rsu", "variable",
                      [](ExperimentConfig &c, const std::string &v) { c.rsu_variable = parse_rsu_variable(trim(v)); },
                      [](const ExperimentConfig &c) { return to_string(c.rsu_variable); }},
                Field{"rsu", "grid", [](ExperimentConfig &c, const std::string &v) { c.rsu_grid = to_grid(v); },
                      [](const ExperimentConfig &c) { return grid_text(c.rsu_grid); }},
                DSK_DOUBLE("rsu", "duration", rsu_duration),

                DSK_DOUBLE("coherence", "distance", coherence.distance),
                DSK_DOUBLE("coherence", "speed", coherence.speed),
                DSK_DOUBLE("coherence", "f_c", coherence.f_c),
                DSK_DOUBLE("coherence", "bandwidth", coherence.bandwidth),
                DSK_DOUBLE("coherence", "l", coherence.l),
                DSK_DOUBLE("coherence", "theta", coherence.theta),
                DSK_DOUBLE("coherence", "phi1", coherence.phi1),
                DSK_DOUBLE("coherence", "phi2", coherence.phi2),
                DSK_DOUBLE("coherence", "t_min", coherence.t_min),
                DSK_DOUBLE("coherence", "t_max", coherence.t_max),
                DSK_UINT("coherence", "points", coherence.points, std::size_t),
                DSK_UINT("coherence", "node_count", coherence.node_count, int),
                DSK_DOUBLE("coherence", "tolerance", coherence.tolerance),
            };
            return table;
        }
#undef DSK_DOUBLE
#undef DSK_UINT

        const char *kSectionOrder[] = {"experiment", "physics", "circular", "sweep", "rsu", "coherence"};

        const Field *find_field(const std::string &section, const std::string &key)
        {
            for (const auto &f : fields())
                if (section == f.section && key == f.key)
                    return &f;
            return nullptr;
        }

        const Field *resolve_bare(const std::string &key)
        {
            for (const char *sec : kSectionOrder)
                if (auto *f = find_field(sec, key))
                    return f;
            return nullptr;
        }

        void set_field(ExperimentConfig &cfg, const std::string &section, const std::string &key,
                       const std::string &value, const std::string &where)
        {
            const Field *f = section.empty() ? resolve_bare(key) : find_field(section, key);
            if (!f)
                throw ConfigError(where + ": unknown key '" + (section.empty() ? key : section + "." + key) + "'");
            try
            {
                f->set(cfg, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(where + ": " + f->section + "." + f->key + ": " + e.what());
            }
        }

        void finish(const ExperimentConfig &cfg, const std::string &origin)
        {
            try
            {
                cfg.validate();
            }
            catch (const InvalidArgument &e)
            {
                throw ConfigError(origin + ": " + e.what());
            }
        }
    }

    ExperimentConfig parse_config(const std::string &text, const std::string &origin)
    {
        // '#' comments are blanked so line numbers in diagnostics stay exact.
        std::string cleaned;
        std::stringstream in(text);
        std::string line;
        while (std::getline(in, line))
        {
            std::string t = trim(line);
            cleaned += (t.rfind('#', 0) == 0 ? "" : line) + "\n";
        }
        boost::property_tree::ptree tree;
        std::stringstream src(cleaned);
        try
        {
            boost::property_tree::ini_parser::read_ini(src, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
        }
        ExperimentConfig cfg;
        for (const auto &[name, node] : tree)
        {
            if (node.empty())
            {
                set_field(cfg, "", name, node.data(), origin);
                continue;
            }
            bool known = false;
            for (const char *sec : kSectionOrder)
                known = known || name == sec;
            if (!known)
                throw ConfigError(origin + ": unknown section '[" + name + "]'");
            for (const auto &[key, leaf] : node)
                set_field(cfg, name, key, leaf.data(), origin);
        }
        finish(cfg, origin);
        return cfg;
    }

    ExperimentConfig parse_config_file(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse_config(ss.str(), path);
    }

    void apply_overrides(ExperimentConfig &cfg, const std::vector<std::string> &overrides)
    {
        for (const auto &o : overrides)
        {
            auto eq = o.find('=');
            if (eq == std::string::npos)
                throw ConfigError("override '" + o + "' is not of the form key=value");
            std::string lhs = trim(o.substr(0, eq));
            std::string value = trim(o.substr(eq + 1));
            auto dot = lhs.find('.');
            std::string section = dot == std::string::npos ? "" : lhs.substr(0, dot);
            std::string key = dot == std::string::npos ? lhs : lhs.substr(dot + 1);
            set_field(cfg, section, key, value, "override");
        }
        finish(cfg, "override");
    }

    std::string serialize(const ExperimentConfig &cfg)
    {
        std::string out;
        std::string current;
        for (const auto &f : fields())
        {
            if (!f.get)
                continue;
            if (current != f.section)
            {
                out += (current.empty() ? "[" : "\n[") + std::string(f.section) + "]\n";
                current = f.section;
            }
            out += std::string(f.key) + " = " + f.get(cfg) + "\n";
        }
        return out;
    }

    std::string config_hash(const ExperimentConfig &cfg)
    {
        // Worker count and output location do not affect results.
        ExperimentConfig canonical = cfg;
        canonical.workers = 0;
        canonical.output = ".";
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : serialize(canonical))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}
