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

#ifndef NFSIM_TRAINING_HPP
#define NFSIM_TRAINING_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "codebook.hpp"
#include "rng.hpp"
#include "steering.hpp"

namespace nfsim {

inline std::complex<double> inner_product(const cvec &a, const cvec &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: size mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < a.size(); ++m)
        acc += std::conj(a[m]) * b[m];
    return acc;
}

inline double vector_norm(const cvec &v)
{
    double acc = 0.0;
    for (const auto &x : v)
        acc += std::norm(x);
    return std::sqrt(acc);
}

/// Result of a beam-training scan. best_gain is measured against the
/// unit-normalized channel direction, so 1 (0 dB) is the matched filter.
/// codebook_size doubles as the training overhead proxy.
struct training_outcome {
    std::size_t best_index = 0;
    int best_n = 0;
    int best_s = 0;
    double best_gain = 0.0;
    double gain_db = 0.0;
    double rate_bps_hz = 0.0;
    std::size_t codebook_size = 0;
};

/// Normalized beam gain |h_dir^H w| in [0, 1]. h_dir must be unit-norm.
inline double beam_gain(const cvec &h_dir, const codeword &w)
{
    if (std::abs(vector_norm(h_dir) - 1.0) > 1e-6)
        throw std::invalid_argument("beam_gain: channel direction must be unit-norm");
    return std::abs(inner_product(h_dir, w.weights));
}

/// R = log2(1 + SNR_tx |h^H w|^2), with the raw (path-loss bearing) channel.
inline double achievable_rate(const cvec &h, const codeword &w, double snr_tx_linear)
{
    if (!(snr_tx_linear >= 0.0))
        throw std::invalid_argument("achievable_rate: SNR must be >= 0");
    const double g = std::abs(inner_product(h, w.weights));
    return std::log2(1.0 + snr_tx_linear * g * g);
}

/// Noiseless exhaustive scan: argmax over codewords of |h^H w|, ties broken
/// by the lowest codeword index. The reported gain is evaluated against
/// h/||h||; the rate against the raw h at snr_tx_linear.
inline training_outcome exhaustive_search(const cvec &h, const codebook &book,
                                          double snr_tx_linear = 0.0)
{
    if (book.codewords.empty())
        throw std::invalid_argument("exhaustive_search: empty codebook");
    const double h_norm = vector_norm(h);
    if (!(h_norm > 0.0))
        throw std::invalid_argument("exhaustive_search: zero channel");

    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < book.codewords.size(); ++i)
    {
        const double g = std::abs(inner_product(h, book.codewords[i].weights));
        if (g > best_abs)
        {
            best_abs = g;
            best = i;
        }
    }

    const codeword &w = book.codewords[best];
    training_outcome out;
    out.best_index = best;
    out.best_n = w.n;
    out.best_s = w.s;
    out.best_gain = best_abs / h_norm;
    out.gain_db = 20.0 * std::log10(out.best_gain);
    out.rate_bps_hz = achievable_rate(h, w, snr_tx_linear);
    out.codebook_size = book.codewords.size();
    return out;
}

/// y = h^H w s + n with n ~ CN(0, noise_variance) drawn from the given
/// stream. Zero variance returns the noiseless product.
inline std::complex<double> received_signal(const cvec &h, const codeword &w,
                                            std::complex<double> symbol, double noise_variance,
                                            rng_stream &rng)
{
    if (!(noise_variance >= 0.0))
        throw std::invalid_argument("received_signal: noise variance must be >= 0");
    std::complex<double> y = inner_product(h, w.weights) * symbol;
    if (noise_variance > 0.0)
        y += rng.complex_gaussian(noise_variance);
    return y;
}

} // namespace nfsim

#endif
