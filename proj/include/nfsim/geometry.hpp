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

#ifndef NFSIM_GEOMETRY_HPP
#define NFSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nfsim {

inline constexpr double speed_of_light = 2.99792458e8; // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();

struct vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(const vec2 &v) { return std::hypot(v.x, v.y); }
inline double distance(const vec2 &a, const vec2 &b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double dot(const vec2 &a, const vec2 &b) { return a.x * b.x + a.y * b.y; }

enum class array_layout { ula, uca };

/// Antenna array description. ULA elements lie on the y-axis centered at the
/// origin, UCA elements on a circle in the x-y plane centered at the origin.
struct array_geometry {
    array_layout layout = array_layout::ula;
    std::size_t num_elements = 1;
    double spacing_m = 0.0; // ULA inter-element spacing
    double radius_m = 0.0;  // UCA radius
    double carrier_frequency_hz = 0.0;

    double wavelength() const { return speed_of_light / carrier_frequency_hz; }

    double aperture() const
    {
        if (layout == array_layout::ula)
            return static_cast<double>(num_elements - 1) * spacing_m;
        return 2.0 * radius_m;
    }

    void validate() const
    {
        if (num_elements < 1)
            throw std::invalid_argument("array_geometry: num_elements must be >= 1");
        if (carrier_frequency_hz <= 0.0)
            throw std::invalid_argument("array_geometry: carrier frequency must be positive");
        if (layout == array_layout::ula && spacing_m <= 0.0)
            throw std::invalid_argument("array_geometry: ULA spacing must be positive");
        if (layout == array_layout::uca && radius_m <= 0.0)
            throw std::invalid_argument("array_geometry: UCA radius must be positive");
    }
};

inline array_geometry make_ula(std::size_t num_elements, double spacing_m, double carrier_frequency_hz)
{
    array_geometry g;
    g.layout = array_layout::ula;
    g.num_elements = num_elements;
    g.spacing_m = spacing_m;
    g.carrier_frequency_hz = carrier_frequency_hz;
    g.validate();
    return g;
}

inline array_geometry make_uca(std::size_t num_elements, double radius_m, double carrier_frequency_hz)
{
    array_geometry g;
    g.layout = array_layout::uca;
    g.num_elements = num_elements;
    g.radius_m = radius_m;
    g.carrier_frequency_hz = carrier_frequency_hz;
    g.validate();
    return g;
}

/// A point in the polar domain: theta is the sine of the physical azimuth
/// (broadside = 0), r the range in meters. r = inf marks a far-field point.
struct polar_point {
    double theta = 0.0;
    double r = 0.0;
};

/// Centered element index offset: (2m - N + 1)/2, so the centroid is at 0.
inline double centered_offset(std::size_t m, std::size_t n)
{
    return (2.0 * static_cast<double>(m) - static_cast<double>(n) + 1.0) / 2.0;
}

inline std::vector<vec2> element_positions(const array_geometry &geom)
{
    geom.validate();
    std::vector<vec2> pos(geom.num_elements);
    const std::size_t n = geom.num_elements;
    if (geom.layout == array_layout::ula)
    {
        for (std::size_t m = 0; m < n; ++m)
            pos[m] = vec2{0.0, centered_offset(m, n) * geom.spacing_m};
    }
    else
    {
        for (std::size_t m = 0; m < n; ++m)
        {
            const double ang = 2.0 * pi * static_cast<double>(m) / static_cast<double>(n);
            pos[m] = vec2{geom.radius_m * std::cos(ang), geom.radius_m * std::sin(ang)};
        }
    }
    return pos;
}

/// Fraunhofer boundary 2 D^2 / lambda.
inline double rayleigh_distance(const array_geometry &geom)
{
    const double d = geom.aperture();
    return 2.0 * d * d / geom.wavelength();
}

/// Lower edge of the radiating near field, 0.62 sqrt(D^3 / lambda).
inline double fresnel_distance(const array_geometry &geom)
{
    const double d = geom.aperture();
    return 0.62 * std::sqrt(d * d * d / geom.wavelength());
}

} // namespace nfsim

#endif
