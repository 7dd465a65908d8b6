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

#ifndef NFSIM_STOCHASTIC_HPP
#define NFSIM_STOCHASTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "geometry.hpp"
#include "rng.hpp"

namespace nfsim {

/// Random-drop scenario description. The LoS amplitude follows the free-space
/// law lambda/(4 pi r) at pathloss_exponent 2; NLoS powers follow an
/// exponential delay-power profile normalized against the Ricean factor.
struct scenario_config {
    array_geometry geometry;
    double r_min_m = 5.0;
    double r_max_m = 80.0;
    std::size_t num_nlos_paths = 5;
    double rice_factor_db = 10.0; // LoS power over total NLoS power; +inf kills NLoS
    double delay_spread_s = 1e-7;
    double scatterer_rho_min_m = 2.0;
    double scatterer_rho_max_m = 50.0;
    double vr_length_fraction_lo = 0.3;
    double vr_length_fraction_hi = 0.8;
    double vr_edge_fraction = 0.0;
    double pathloss_exponent = 2.0;
    std::uint64_t master_seed = 1;

    void validate() const
    {
        geometry.validate();
        if (!(r_min_m > 0.0) || !(r_max_m >= r_min_m))
            throw std::invalid_argument("scenario_config: need 0 < r_min <= r_max");
        if (!(delay_spread_s > 0.0))
            throw std::invalid_argument("scenario_config: delay spread must be positive");
        if (!(scatterer_rho_min_m > geometry.aperture() / 2.0))
            throw std::invalid_argument("scenario_config: scatterer annulus must clear the array");
        if (!(scatterer_rho_max_m >= scatterer_rho_min_m))
            throw std::invalid_argument("scenario_config: need rho_min <= rho_max");
        if (!(vr_length_fraction_lo > 0.0) || !(vr_length_fraction_hi >= vr_length_fraction_lo) ||
            !(vr_length_fraction_hi <= 1.0))
            throw std::invalid_argument("scenario_config: VR fractions must satisfy 0 < lo <= hi <= 1");
        if (!(vr_edge_fraction >= 0.0))
            throw std::invalid_argument("scenario_config: VR edge fraction must be >= 0");
        if (!(pathloss_exponent > 0.0))
            throw std::invalid_argument("scenario_config: pathloss exponent must be positive");
    }
};

/// One Monte Carlo realization of user placement, multipath set and
/// visibility mask. Regenerating with the same (master_seed, drop_index)
/// yields identical values.
struct drop {
    polar_point user;
    vec2 user_position;
    std::vector<path> paths; // LoS path first
    sns_mask mask;
    std::size_t drop_index = 0;
    std::uint64_t rng_seed = 0;
};

/// NLoS paths for one drop. Scatterers are drawn uniformly on an annulus
/// around the array; powers get an exponential delay profile scaled so the
/// total equals the LoS power divided by the linear Ricean factor.
inline std::vector<path> sample_paths(const scenario_config &cfg, rng_stream &rng,
                                      const vec2 &user_position, double los_delay_s,
                                      double los_power)
{
    std::vector<path> out;
    out.reserve(cfg.num_nlos_paths);
    std::vector<double> weights(cfg.num_nlos_paths);

    for (std::size_t k = 0; k < cfg.num_nlos_paths; ++k)
    {
        const double ang = rng.uniform(-pi, pi);
        const double rad = rng.uniform(cfg.scatterer_rho_min_m, cfg.scatterer_rho_max_m);
        const double phase = rng.uniform(0.0, 2.0 * pi);
        path p;
        p.kind = path_kind::nlos;
        p.first_scatterer = vec2{rad * std::cos(ang), rad * std::sin(ang)};
        p.delay_s = (norm(p.first_scatterer) + distance(p.first_scatterer, user_position)) /
                    speed_of_light;
        p.amplitude = std::polar(1.0, phase); // magnitude assigned below
        weights[k] = std::exp(-(p.delay_s - los_delay_s) / cfg.delay_spread_s);
        out.push_back(p);
    }

    double weight_sum = 0.0;
    for (const double w : weights)
        weight_sum += w;
    const double total_nlos_power = los_power * std::pow(10.0, -cfg.rice_factor_db / 10.0);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k].amplitude *= std::sqrt(total_nlos_power * weights[k] / weight_sum);
    return out;
}

/// Visibility mask for a path list. The LoS column is all ones; each NLoS
/// column is a contiguous segment of round(N * U(lo, hi)) elements centered
/// at a uniform element index and shifted inward so the full segment stays
/// on the array (a full-length draw therefore covers every element), with an
/// optional raised-cosine rolloff clipped at the array ends. A column that
/// comes out empty is redrawn.
inline sns_mask sample_visibility(const scenario_config &cfg, const std::vector<path> &paths,
                                  rng_stream &rng)
{
    const std::size_t n = cfg.geometry.num_elements;
    const auto edge = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * cfg.vr_edge_fraction));

    sns_mask mask;
    mask.num_elements = n;
    mask.num_paths = paths.size();
    mask.values.assign(n * paths.size(), 0.0);
    mask.regions.resize(paths.size());

    for (std::size_t k = 0; k < paths.size(); ++k)
    {
        if (paths[k].kind == path_kind::los)
        {
            for (std::size_t m = 0; m < n; ++m)
                mask.at(m, k) = 1.0;
            mask.regions[k] = visibility_region{n / 2, n, 0};
            continue;
        }

        visibility_region vr;
        bool column_nonzero = false;
        for (int attempt = 0; attempt < 1000 && !column_nonzero; ++attempt)
        {
            vr.center_index = rng.uniform_index(n);
            const double frac = rng.uniform(cfg.vr_length_fraction_lo, cfg.vr_length_fraction_hi);
            vr.length = static_cast<std::size_t>(std::llround(static_cast<double>(n) * frac));
            vr.edge_width = edge;
            column_nonzero = vr.length >= 1;
        }
        if (!column_nonzero)
            throw std::logic_error("sample_visibility: could not draw a visible segment");

        auto start = static_cast<long long>(vr.center_index) -
                     static_cast<long long>(vr.length) / 2;
        start = std::clamp(start, 0LL, static_cast<long long>(n - vr.length));
        const auto stop = start + static_cast<long long>(vr.length); // exclusive
        for (long long m = start; m < stop; ++m)
            mask.at(static_cast<std::size_t>(m), k) = 1.0;
        for (std::size_t i = 1; i <= vr.edge_width; ++i)
        {
            const double ramp =
                0.5 * (1.0 + std::cos(pi * static_cast<double>(i) /
                                      static_cast<double>(vr.edge_width + 1)));
            const long long lo = start - static_cast<long long>(i);
            const long long hi = stop - 1 + static_cast<long long>(i);
            if (lo >= 0 && lo < static_cast<long long>(n))
                mask.at(static_cast<std::size_t>(lo), k) = ramp;
            if (hi >= 0 && hi < static_cast<long long>(n))
                mask.at(static_cast<std::size_t>(hi), k) = ramp;
        }
        mask.regions[k] = vr;
    }
    return mask;
}

/// One reproducible drop. Draw order is fixed and part of the contract:
/// azimuth, range (skipped when fixed_r is given), LoS phase, then per NLoS
/// path (angle, radius, phase), then per NLoS column (center, length).
inline drop sample_drop(const scenario_config &cfg, std::size_t drop_index,
                        std::optional<double> fixed_r = std::nullopt)
{
    cfg.validate();
    drop d;
    d.drop_index = drop_index;
    d.rng_seed = stream_seed(cfg.master_seed, drop_index);
    rng_stream rng(d.rng_seed);

    const double phi = rng.uniform(-pi / 2.0, pi / 2.0);
    const double r = fixed_r ? *fixed_r : rng.uniform(cfg.r_min_m, cfg.r_max_m);
    if (!(r > 0.0))
        throw std::invalid_argument("sample_drop: range must be positive");
    d.user = polar_point{std::sin(phi), r};
    d.user_position = vec2{r * std::cos(phi), r * std::sin(phi)};

    const double lam = cfg.geometry.wavelength();
    const double los_amp = lam / (4.0 * pi) * std::pow(r, -cfg.pathloss_exponent / 2.0);
    const double los_phase = rng.uniform(0.0, 2.0 * pi);

    path los;
    los.kind = path_kind::los;
    los.amplitude = std::polar(los_amp, los_phase);
    los.delay_s = r / speed_of_light;
    los.first_scatterer = d.user_position;

    d.paths.push_back(los);
    auto nlos = sample_paths(cfg, rng, d.user_position, los.delay_s, los_amp * los_amp);
    d.paths.insert(d.paths.end(), nlos.begin(), nlos.end());
    d.mask = sample_visibility(cfg, d.paths, rng);
    return d;
}

} // namespace nfsim

#endif
