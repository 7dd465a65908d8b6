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

#ifndef NFSIM_STEERING_HPP
#define NFSIM_STEERING_HPP

#include <complex>
#include <vector>

#include "geometry.hpp"

namespace nfsim {

using cvec = std::vector<std::complex<double>>;

enum class steering_model { exact_spherical, planar_ff, fresnel_second_order };

/// Unit-norm, constant-modulus array response. Entry m carries the phase
/// -2*pi*(r_m - r)/lambda of the propagation distance difference between
/// element m and the reference point (the array centroid).
struct steering_vector {
    cvec entries;
    polar_point label;
    steering_model model = steering_model::exact_spherical;
};

namespace detail {

inline void check_source_point(const array_geometry &geom, const polar_point &p)
{
    if (!(std::abs(p.theta) <= 1.0))
        throw std::invalid_argument("steering: |theta| must be <= 1");
    if (!(p.r > 0.0) || std::isinf(p.r) || std::isnan(p.r))
        throw std::invalid_argument("steering: range must be positive and finite");
    const double max_offset =
        geom.layout == array_layout::ula ? geom.aperture() / 2.0 : geom.radius_m;
    if (p.r <= max_offset)
        throw std::invalid_argument("steering: source point lies inside the array");
}

/// Unit vector from the origin toward spatial angle theta, in the x-y plane.
inline vec2 direction(double theta) { return vec2{std::sqrt(1.0 - theta * theta), theta}; }

} // namespace detail

/// Exact spherical-wavefront steering vector toward p.
/// For a ULA the per-element range follows the in-plane law of cosines,
/// r_m = sqrt(r^2 + y_m^2 - 2 r y_m theta); the difference r_m - r is
/// evaluated in the cancellation-free form (y_m^2 - 2 r y_m theta)/(r_m + r).
inline steering_vector nf_steering(const array_geometry &geom, const polar_point &p)
{
    geom.validate();
    detail::check_source_point(geom, p);
    const std::size_t n = geom.num_elements;
    const double lam = geom.wavelength();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    steering_vector v;
    v.entries.resize(n);
    v.label = p;
    v.model = steering_model::exact_spherical;

    if (geom.layout == array_layout::ula)
    {
        for (std::size_t m = 0; m < n; ++m)
        {
            const double y = centered_offset(m, n) * geom.spacing_m;
            const double q = y * y - 2.0 * p.r * y * p.theta;
            const double rm = std::sqrt(p.r * p.r + q);
            const double diff = q / (rm + p.r);
            v.entries[m] = std::polar(inv_sqrt_n, -2.0 * pi * diff / lam);
        }
    }
    else
    {
        const vec2 u{p.r * std::sqrt(1.0 - p.theta * p.theta), p.r * p.theta};
        const auto pos = element_positions(geom);
        for (std::size_t m = 0; m < n; ++m)
        {
            const double q = dot(pos[m], pos[m]) - 2.0 * dot(u, pos[m]);
            const double rm = std::sqrt(p.r * p.r + q);
            const double diff = q / (rm + p.r);
            v.entries[m] = std::polar(inv_sqrt_n, -2.0 * pi * diff / lam);
        }
    }
    return v;
}

/// Planar-wavefront (first-order) steering vector toward spatial angle theta.
/// Entry phases are the r -> inf limit of nf_steering, 2*pi*(e_m . u)/lambda
/// with u the unit direction; linear in the element offset for a ULA.
inline steering_vector ff_steering(const array_geometry &geom, double theta)
{
    geom.validate();
    if (!(std::abs(theta) <= 1.0))
        throw std::invalid_argument("steering: |theta| must be <= 1");
    const std::size_t n = geom.num_elements;
    const double lam = geom.wavelength();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    steering_vector v;
    v.entries.resize(n);
    v.label = polar_point{theta, inf};
    v.model = steering_model::planar_ff;

    if (geom.layout == array_layout::ula)
    {
        for (std::size_t m = 0; m < n; ++m)
        {
            const double y = centered_offset(m, n) * geom.spacing_m;
            v.entries[m] = std::polar(inv_sqrt_n, 2.0 * pi * y * theta / lam);
        }
    }
    else
    {
        const vec2 u = detail::direction(theta);
        const auto pos = element_positions(geom);
        for (std::size_t m = 0; m < n; ++m)
            v.entries[m] = std::polar(inv_sqrt_n, 2.0 * pi * dot(pos[m], u) / lam);
    }
    return v;
}

/// Second-order (Fresnel) approximation of nf_steering:
/// r_m - r ~ -proj + (|e_m|^2 - proj^2)/(2r) with proj = e_m . u.
/// For a ULA this is the familiar -y*theta + y^2 (1 - theta^2)/(2r).
inline steering_vector fresnel_steering(const array_geometry &geom, const polar_point &p)
{
    geom.validate();
    detail::check_source_point(geom, p);
    const std::size_t n = geom.num_elements;
    const double lam = geom.wavelength();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    steering_vector v;
    v.entries.resize(n);
    v.label = p;
    v.model = steering_model::fresnel_second_order;

    const vec2 u = detail::direction(p.theta);
    const auto pos = element_positions(geom);
    for (std::size_t m = 0; m < n; ++m)
    {
        const double proj = dot(pos[m], u);
        const double diff = -proj + (dot(pos[m], pos[m]) - proj * proj) / (2.0 * p.r);
        v.entries[m] = std::polar(inv_sqrt_n, -2.0 * pi * diff / lam);
    }
    return v;
}

/// Element-indexed phase profile, unwrapped so that successive differences
/// stay in (-pi, pi].
inline std::vector<double> phase_profile(const steering_vector &v)
{
    std::vector<double> profile(v.entries.size());
    if (v.entries.empty())
        return profile;
    profile[0] = std::arg(v.entries[0]);
    for (std::size_t m = 1; m < v.entries.size(); ++m)
    {
        double step = std::arg(v.entries[m]) - std::arg(v.entries[m - 1]);
        while (step > pi)
            step -= 2.0 * pi;
        while (step <= -pi)
            step += 2.0 * pi;
        profile[m] = profile[m - 1] + step;
    }
    return profile;
}

} // namespace nfsim

#endif
