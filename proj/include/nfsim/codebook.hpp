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

#ifndef NFSIM_CODEBOOK_HPP
#define NFSIM_CODEBOOK_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "steering.hpp"

namespace nfsim {

enum class codebook_kind { ff, nf };

/// Unit-norm beamforming weight vector with its polar-domain label.
/// Far-field codewords carry r_m = inf and ring index s = 0.
struct codeword {
    cvec weights;
    double theta = 0.0;
    double r_m = inf;
    int n = 0; // angle index, 1-based
    int s = 0; // distance ring index, 0 = far-field ring
};

struct codebook {
    codebook_kind kind = codebook_kind::ff;
    array_geometry geom;
    double beta = 0.0;      // NF only
    double r_floor_m = 0.0; // NF only
    std::vector<codeword> codewords;

    std::size_t size() const { return codewords.size(); }
};

namespace detail {

inline void require_ula(const array_geometry &geom, const char *what)
{
    geom.validate();
    if (geom.layout != array_layout::ula)
        throw std::invalid_argument(std::string(what) + ": ULA geometry required");
}

} // namespace detail

/// DFT angle grid theta_n = (2n - N - 1)/N, n = 1..N.
inline double ff_grid_angle(std::size_t n_index, std::size_t num_elements)
{
    return (2.0 * static_cast<double>(n_index) - static_cast<double>(num_elements) - 1.0) /
           static_cast<double>(num_elements);
}

/// Far-field DFT codebook: N planar codewords on the uniform angle grid.
inline codebook build_ff_codebook(const array_geometry &geom)
{
    detail::require_ula(geom, "build_ff_codebook");
    codebook book;
    book.kind = codebook_kind::ff;
    book.geom = geom;
    book.codewords.reserve(geom.num_elements);
    for (std::size_t n = 1; n <= geom.num_elements; ++n)
    {
        const double theta = ff_grid_angle(n, geom.num_elements);
        codeword w;
        w.weights = ff_steering(geom, theta).entries;
        w.theta = theta;
        w.r_m = inf;
        w.n = static_cast<int>(n);
        w.s = 0;
        book.codewords.push_back(std::move(w));
    }
    return book;
}

/// Distance rings for one angle: r_s = N^2 d^2 (1 - theta^2) / (2 s beta^2
/// lambda) for s = 1, 2, ... while r_s >= r_floor, preceded by the s = 0
/// far-field ring at infinity. Strictly decreasing after the first entry.
inline std::vector<double> distance_rings(const array_geometry &geom, double theta, double beta,
                                          double r_floor_m)
{
    detail::require_ula(geom, "distance_rings");
    if (!(beta > 0.0))
        throw std::invalid_argument("distance_rings: beta must be positive");
    if (!(r_floor_m > 0.0))
        throw std::invalid_argument("distance_rings: r_floor must be positive");

    const double nd = static_cast<double>(geom.num_elements) * geom.spacing_m;
    const double scale = nd * nd * (1.0 - theta * theta) / (2.0 * beta * beta * geom.wavelength());

    std::vector<double> rings{inf};
    for (std::size_t s = 1;; ++s)
    {
        const double r = scale / static_cast<double>(s);
        if (!(r >= r_floor_m))
            break;
        rings.push_back(r);
    }
    return rings;
}

/// Polar-domain codebook: for each DFT grid angle, one codeword per distance
/// ring. The s = 0 layer is built by the same construction as the far-field
/// codebook and matches it entry for entry.
inline codebook build_nf_codebook(const array_geometry &geom, double beta = 1.6,
                                  double r_floor_m = 5.0)
{
    detail::require_ula(geom, "build_nf_codebook");
    codebook book;
    book.kind = codebook_kind::nf;
    book.geom = geom;
    book.beta = beta;
    book.r_floor_m = r_floor_m;
    for (std::size_t n = 1; n <= geom.num_elements; ++n)
    {
        const double theta = ff_grid_angle(n, geom.num_elements);
        const auto rings = distance_rings(geom, theta, beta, r_floor_m);
        for (std::size_t s = 0; s < rings.size(); ++s)
        {
            codeword w;
            w.weights = s == 0 ? ff_steering(geom, theta).entries
                               : nf_steering(geom, polar_point{theta, rings[s]}).entries;
            w.theta = theta;
            w.r_m = rings[s];
            w.n = static_cast<int>(n);
            w.s = static_cast<int>(s);
            book.codewords.push_back(std::move(w));
        }
    }
    return book;
}

/// |a(theta, r_a)^H a(theta, r_b)| between two steering vectors at the same
/// angle; an infinite range selects the planar vector.
inline double column_coherence(const array_geometry &geom, double theta, double r_a, double r_b)
{
    const auto steer = [&](double r) {
        return std::isinf(r) ? ff_steering(geom, theta).entries
                             : nf_steering(geom, polar_point{theta, r}).entries;
    };
    const cvec a = steer(r_a);
    const cvec b = steer(r_b);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < a.size(); ++m)
        acc += std::conj(a[m]) * b[m];
    return std::abs(acc);
}

} // namespace nfsim

#endif
