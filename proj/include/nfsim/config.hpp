// SPDX-License-Identifier: Apache-2.0
//
// nfsim: near-field XL-MIMO channel simulation and beam training toolkit
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

#ifndef NFSIM_CONFIG_HPP
#define NFSIM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "experiments.hpp"

namespace nfsim {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a CLI run needs, read from one key=value file.
struct sim_config {
    scenario_config scenario;
    double distance_start_m = 5.0;
    double distance_stop_m = 80.0;
    double distance_step_m = 1.0;
    double snr_db_start = 100.0;
    double snr_db_stop = 115.0;
    double snr_db_step = 2.5;
    std::size_t drops_per_point = 100;
    channel_model model = channel_model::nf_sns;
    std::vector<codebook_kind> codebooks{codebook_kind::ff, codebook_kind::nf};
    double beta = 1.6;
    double r_floor_m = 5.0;
    double delay_bin_s = 2e-8;
    double profile_distance_m = 14.0;
    double pdp_distance_m = 14.0;
};

namespace detail {

inline std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    }
    catch (const std::exception &)
    {
        throw config_error("config: bad numeric value for '" + key + "': " + value);
    }
}

inline std::uint64_t parse_u64(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    }
    catch (const std::exception &)
    {
        throw config_error("config: bad integer value for '" + key + "': " + value);
    }
}

} // namespace detail

/// INI-style key=value parser. '#' starts a comment, blank lines are
/// skipped, unknown keys are a hard error.
inline sim_config parse_config(const std::string &text)
{
    sim_config cfg;
    double spacing_m = 0.0; // 0 selects half-wavelength spacing
    bool have_radius = false;

    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected key=value on line " + std::to_string(lineno));
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config: empty key or value on line " + std::to_string(lineno));
        if (!kv.emplace(key, value).second)
            throw config_error("config: duplicate key '" + key + "'");
    }

    auto &geom = cfg.scenario.geometry;
    geom.num_elements = 150;
    geom.carrier_frequency_hz = 15e9;

    for (const auto &[key, value] : kv)
    {
        if (key == "layout")
        {
            if (value == "ULA" || value == "ula")
                geom.layout = array_layout::ula;
            else if (value == "UCA" || value == "uca")
                geom.layout = array_layout::uca;
            else
                throw config_error("config: layout must be ULA or UCA, got " + value);
        }
        else if (key == "num_elements")
            geom.num_elements = static_cast<std::size_t>(detail::parse_u64(key, value));
        else if (key == "spacing_m")
            spacing_m = detail::parse_number(key, value);
        else if (key == "radius_m")
        {
            geom.radius_m = detail::parse_number(key, value);
            have_radius = true;
        }
        else if (key == "carrier_frequency_hz")
            geom.carrier_frequency_hz = detail::parse_number(key, value);
        else if (key == "r_min_m")
            cfg.scenario.r_min_m = detail::parse_number(key, value);
        else if (key == "r_max_m")
            cfg.scenario.r_max_m = detail::parse_number(key, value);
        else if (key == "num_nlos_paths")
            cfg.scenario.num_nlos_paths = static_cast<std::size_t>(detail::parse_u64(key, value));
        else if (key == "rice_factor_db")
            cfg.scenario.rice_factor_db = detail::parse_number(key, value);
        else if (key == "delay_spread_s")
            cfg.scenario.delay_spread_s = detail::parse_number(key, value);
        else if (key == "scatterer_rho_min_m")
            cfg.scenario.scatterer_rho_min_m = detail::parse_number(key, value);
        else if (key == "scatterer_rho_max_m")
            cfg.scenario.scatterer_rho_max_m = detail::parse_number(key, value);
        else if (key == "vr_length_fraction_lo")
            cfg.scenario.vr_length_fraction_lo = detail::parse_number(key, value);
        else if (key == "vr_length_fraction_hi")
            cfg.scenario.vr_length_fraction_hi = detail::parse_number(key, value);
        else if (key == "vr_edge_fraction")
            cfg.scenario.vr_edge_fraction = detail::parse_number(key, value);
        else if (key == "pathloss_exponent")
            cfg.scenario.pathloss_exponent = detail::parse_number(key, value);
        else if (key == "master_seed")
            cfg.scenario.master_seed = detail::parse_u64(key, value);
        else if (key == "distance_start_m")
            cfg.distance_start_m = detail::parse_number(key, value);
        else if (key == "distance_stop_m")
            cfg.distance_stop_m = detail::parse_number(key, value);
        else if (key == "distance_step_m")
            cfg.distance_step_m = detail::parse_number(key, value);
        else if (key == "snr_db_start")
            cfg.snr_db_start = detail::parse_number(key, value);
        else if (key == "snr_db_stop")
            cfg.snr_db_stop = detail::parse_number(key, value);
        else if (key == "snr_db_step")
            cfg.snr_db_step = detail::parse_number(key, value);
        else if (key == "drops_per_point")
            cfg.drops_per_point = static_cast<std::size_t>(detail::parse_u64(key, value));
        else if (key == "channel_model")
        {
            if (value == "nf_sns")
                cfg.model = channel_model::nf_sns;
            else if (value == "nf_stationary")
                cfg.model = channel_model::nf_stationary;
            else if (value == "ff_planar")
                cfg.model = channel_model::ff_planar;
            else
                throw config_error("config: unknown channel_model " + value);
        }
        else if (key == "codebooks")
        {
            cfg.codebooks.clear();
            std::istringstream books(value);
            std::string b;
            while (std::getline(books, b, ','))
            {
                b = detail::trim(b);
                if (b == "ff")
                    cfg.codebooks.push_back(codebook_kind::ff);
                else if (b == "nf")
                    cfg.codebooks.push_back(codebook_kind::nf);
                else
                    throw config_error("config: unknown codebook " + b);
            }
            if (cfg.codebooks.empty())
                throw config_error("config: codebooks must name ff and/or nf");
        }
        else if (key == "beta")
            cfg.beta = detail::parse_number(key, value);
        else if (key == "r_floor_m")
            cfg.r_floor_m = detail::parse_number(key, value);
        else if (key == "delay_bin_s")
            cfg.delay_bin_s = detail::parse_number(key, value);
        else if (key == "profile_distance_m")
            cfg.profile_distance_m = detail::parse_number(key, value);
        else if (key == "pdp_distance_m")
            cfg.pdp_distance_m = detail::parse_number(key, value);
        else
            throw config_error("config: unknown key '" + key + "'");
    }

    if (geom.layout == array_layout::ula)
        geom.spacing_m = spacing_m > 0.0 ? spacing_m : geom.wavelength() / 2.0;
    else if (!have_radius)
        throw config_error("config: UCA layout requires radius_m");

    try
    {
        cfg.scenario.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw config_error(std::string("config: ") + e.what());
    }
    return cfg;
}

inline std::vector<double> make_grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !(stop >= start))
        throw config_error("config: grid requires start <= stop and step > 0");
    std::vector<double> grid;
    const double eps = step * 1e-9;
    for (double x = start; x <= stop + eps; x += step)
        grid.push_back(x);
    return grid;
}

/// Assembles the sweep description for one CLI run.
inline sweep_spec make_sweep_spec(const sim_config &cfg, sweep_kind kind)
{
    sweep_spec spec;
    spec.kind = kind;
    spec.scenario = cfg.scenario;
    spec.distance_grid_m = make_grid(cfg.distance_start_m, cfg.distance_stop_m, cfg.distance_step_m);
    spec.snr_grid_db = make_grid(cfg.snr_db_start, cfg.snr_db_stop, cfg.snr_db_step);
    spec.drops_per_point = cfg.drops_per_point;
    spec.model = cfg.model;
    spec.codebooks = cfg.codebooks;
    spec.beta = cfg.beta;
    spec.r_floor_m = cfg.r_floor_m;
    spec.delay_bin_s = cfg.delay_bin_s;
    spec.profile_distance_m = cfg.profile_distance_m;
    spec.pdp_distance_m = cfg.pdp_distance_m;
    try
    {
        spec.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw config_error(std::string("config: ") + e.what());
    }
    return spec;
}

} // namespace nfsim

#endif
