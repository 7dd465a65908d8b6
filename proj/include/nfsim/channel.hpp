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

#ifndef NFSIM_CHANNEL_HPP
#define NFSIM_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "steering.hpp"

namespace nfsim {

enum class path_kind { los, nlos };

/// One multipath component. Everything past the first bounce is absorbed into
/// the amplitude and delay; only the first scatterer enters the array
/// manifold. For the LoS path the "scatterer" is the user location itself.
struct path {
    std::complex<double> amplitude{0.0, 0.0}; // linear scale
    double delay_s = 0.0;
    vec2 first_scatterer{};
    path_kind kind = path_kind::nlos;
};

/// Contiguous run of elements that can see a path, plus a raised-cosine
/// rolloff of edge_width elements on each side.
struct visibility_region {
    std::size_t center_index = 0;
    std::size_t length = 0;
    std::size_t edge_width = 0;
};

/// Nonnegative per-element, per-path visibility weights (N x K, row-major).
struct sns_mask {
    std::size_t num_elements = 0;
    std::size_t num_paths = 0;
    std::vector<double> values;
    std::vector<visibility_region> regions;

    double &at(std::size_t m, std::size_t k) { return values[m * num_paths + k]; }
    double at(std::size_t m, std::size_t k) const { return values[m * num_paths + k]; }

    static sns_mask all_ones(std::size_t n, std::size_t k)
    {
        sns_mask s;
        s.num_elements = n;
        s.num_paths = k;
        s.values.assign(n * k, 1.0);
        s.regions.assign(k, visibility_region{n / 2, n, 0});
        return s;
    }
};

/// Minimal dense complex matrix, row-major.
struct cmat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::complex<double>> data;

    cmat() = default;
    cmat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    std::complex<double> &at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    std::complex<double> at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Per-path channel frequency response at f: alpha_k * exp(-j 2 pi f tau_k).
inline cvec cfr_paths(const std::vector<path> &paths, double f_hz)
{
    if (!(f_hz > 0.0))
        throw std::invalid_argument("cfr_paths: frequency must be positive");
    cvec h(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k)
        h[k] = paths[k].amplitude * std::polar(1.0, -2.0 * pi * f_hz * paths[k].delay_s);
    return h;
}

/// Spherical-wavefront array manifold: entry (m, k) is the response of
/// element m to path k relative to the reference point (the origin),
/// (|d_k| / |d_mk|) * exp(-j 2 pi f (|d_mk| - |d_k|) / c).
inline cmat array_manifold(const array_geometry &geom, const std::vector<path> &paths, double f_hz)
{
    geom.validate();
    if (!(f_hz > 0.0))
        throw std::invalid_argument("array_manifold: frequency must be positive");
    const auto pos = element_positions(geom);
    const std::size_t n = geom.num_elements;
    const std::size_t k = paths.size();
    constexpr double degenerate = 1e-12;

    cmat a(n, k);
    for (std::size_t j = 0; j < k; ++j)
    {
        const vec2 s = paths[j].first_scatterer;
        const double dk = norm(s);
        if (dk <= degenerate)
            throw std::invalid_argument("array_manifold: scatterer at the reference point");
        for (std::size_t m = 0; m < n; ++m)
        {
            const double q = dot(pos[m], pos[m]) - 2.0 * dot(s, pos[m]);
            const double dmk = std::sqrt(dk * dk + q);
            if (dmk <= degenerate)
                throw std::invalid_argument("array_manifold: scatterer coincides with an element");
            const double diff = q / (dmk + dk); // |d_mk| - |d_k| without cancellation
            a.at(m, j) = std::polar(dk / dmk, -2.0 * pi * f_hz * diff / speed_of_light);
        }
    }
    return a;
}

/// Planar-wavefront manifold: unit amplitude, phase linear in the element
/// offset along each path's arrival direction. First-order limit of
/// array_manifold for distant scatterers.
inline cmat planar_manifold(const array_geometry &geom, const std::vector<path> &paths, double f_hz)
{
    geom.validate();
    if (!(f_hz > 0.0))
        throw std::invalid_argument("planar_manifold: frequency must be positive");
    const auto pos = element_positions(geom);
    const std::size_t n = geom.num_elements;
    const std::size_t k = paths.size();

    cmat a(n, k);
    for (std::size_t j = 0; j < k; ++j)
    {
        const vec2 s = paths[j].first_scatterer;
        const double dk = norm(s);
        if (dk <= 1e-12)
            throw std::invalid_argument("planar_manifold: scatterer at the reference point");
        const vec2 u{s.x / dk, s.y / dk};
        for (std::size_t m = 0; m < n; ++m)
            a.at(m, j) = std::polar(1.0, 2.0 * pi * f_hz * dot(pos[m], u) / speed_of_light);
    }
    return a;
}

/// h[m] = sum_k S(m,k) * A(m,k) * H[k].
inline cvec compose_sns(const sns_mask &s, const cmat &a, const cvec &h)
{
    if (s.num_elements != a.rows || s.num_paths != a.cols || h.size() != a.cols)
        throw std::invalid_argument("compose_sns: dimension mismatch");
    cvec out(a.rows, std::complex<double>{0.0, 0.0});
    for (std::size_t m = 0; m < a.rows; ++m)
        for (std::size_t k = 0; k < a.cols; ++k)
            out[m] += s.at(m, k) * a.at(m, k) * h[k];
    return out;
}

/// Stationary special case of compose_sns with every mask entry equal to 1.
/// The accumulation order matches compose_sns, so an explicit all-ones mask
/// reproduces this result bit for bit.
inline cvec compose_stationary(const cmat &a, const cvec &h)
{
    if (h.size() != a.cols)
        throw std::invalid_argument("compose_stationary: dimension mismatch");
    cvec out(a.rows, std::complex<double>{0.0, 0.0});
    for (std::size_t m = 0; m < a.rows; ++m)
        for (std::size_t k = 0; k < a.cols; ++k)
            out[m] += a.at(m, k) * h[k];
    return out;
}

/// Single-path line-of-sight channel sqrt(N) * alpha * a(theta, r).
inline cvec los_channel(const array_geometry &geom, const polar_point &p, std::complex<double> alpha)
{
    const steering_vector a = nf_steering(geom, p);
    cvec h(a.entries.size());
    const double scale = std::sqrt(static_cast<double>(a.entries.size()));
    for (std::size_t m = 0; m < h.size(); ++m)
        h[m] = scale * alpha * a.entries[m];
    return h;
}

/// One random channel instance with its factor matrices kept alongside the
/// composed response, so h_sns = (S o A) H is recomputable.
struct channel_realization {
    array_geometry geom;
    polar_point user;
    std::vector<path> paths;
    sns_mask mask;
    std::vector<double> frequencies_hz;
    std::vector<cmat> manifolds; // one per frequency
    std::vector<cvec> cfrs;      // one per frequency
    std::vector<cvec> h_sns;     // one per frequency
};

inline channel_realization make_realization(const array_geometry &geom, const polar_point &user,
                                            std::vector<path> paths, sns_mask mask,
                                            std::vector<double> frequencies_hz,
                                            bool planar_wavefront = false)
{
    if (frequencies_hz.empty())
        throw std::invalid_argument("make_realization: at least one frequency required");
    if (mask.num_elements != geom.num_elements || mask.num_paths != paths.size())
        throw std::invalid_argument("make_realization: mask dimensions do not match");
    std::size_t los_count = 0;
    for (const auto &p : paths)
    {
        if (p.kind == path_kind::los)
            ++los_count;
        // the first bounce cannot precede straight-line travel to the scatterer
        else if (p.delay_s * speed_of_light < norm(p.first_scatterer) - 1e-9)
            throw std::invalid_argument("make_realization: NLoS delay shorter than the "
                                        "straight-line time to its scatterer");
    }
    if (los_count > 1)
        throw std::invalid_argument("make_realization: more than one LoS path");

    channel_realization cr;
    cr.geom = geom;
    cr.user = user;
    cr.paths = std::move(paths);
    cr.mask = std::move(mask);
    cr.frequencies_hz = std::move(frequencies_hz);
    for (const double f : cr.frequencies_hz)
    {
        cmat a = planar_wavefront ? planar_manifold(geom, cr.paths, f)
                                  : array_manifold(geom, cr.paths, f);
        cvec h = cfr_paths(cr.paths, f);
        cr.h_sns.push_back(compose_sns(cr.mask, a, h));
        cr.manifolds.push_back(std::move(a));
        cr.cfrs.push_back(std::move(h));
    }
    return cr;
}

/// Element-by-delay-bin power map, num_elements x num_bins row-major.
struct pdp_matrix {
    std::size_t num_elements = 0;
    std::size_t num_bins = 0;
    double bin_s = 0.0;
    std::vector<double> power;

    double &at(std::size_t m, std::size_t b) { return power[m * num_bins + b]; }
    double at(std::size_t m, std::size_t b) const { return power[m * num_bins + b]; }
};

/// Power delay profile of a realization at its first frequency. Bin b of
/// element m accumulates |S(m,k) A(m,k) alpha_k|^2 over paths whose delay
/// falls in bin b.
inline pdp_matrix compute_pdp(const channel_realization &cr, double delay_bin_s)
{
    if (!(delay_bin_s > 0.0))
        throw std::invalid_argument("compute_pdp: delay bin must be positive");

    const std::size_t n = cr.geom.num_elements;
    double max_delay = 0.0;
    for (const auto &p : cr.paths)
        max_delay = std::max(max_delay, p.delay_s);

    pdp_matrix pdp;
    pdp.num_elements = n;
    pdp.num_bins = cr.paths.empty()
                       ? 1
                       : static_cast<std::size_t>(std::ceil(max_delay / delay_bin_s)) + 1;
    pdp.bin_s = delay_bin_s;
    pdp.power.assign(n * pdp.num_bins, 0.0);

    const cmat &a = cr.manifolds.front();
    for (std::size_t k = 0; k < cr.paths.size(); ++k)
    {
        const auto b = static_cast<std::size_t>(cr.paths[k].delay_s / delay_bin_s);
        for (std::size_t m = 0; m < n; ++m)
        {
            const double w = std::abs(cr.mask.at(m, k) * a.at(m, k) * cr.paths[k].amplitude);
            pdp.at(m, b) += w * w;
        }
    }
    return pdp;
}

} // namespace nfsim

#endif
