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

#ifndef NFSIM_RNG_HPP
#define NFSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include "geometry.hpp"

namespace nfsim {

/// One splitmix64 mixing round (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the per-stream generator for a given (master seed, stream index).
/// Streams with distinct indices are statistically independent, so work items
/// may be generated on any worker in any order.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index)
{
    const std::uint64_t a = splitmix64_mix(master_seed);
    return splitmix64_mix(a ^ (stream_index + 0x632BE59BD9B4E019ULL));
}

/// Deterministic random stream. All variate transforms are implemented here
/// from raw 64-bit engine output; the C++ standard <random> distributions are
/// implementation-defined and would break the byte-identical reproducibility
/// contract across library versions.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), n >= 1.
    std::size_t uniform_index(std::size_t n)
    {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    /// Two independent standard normal variates (Box-Muller).
    std::pair<double, double> gaussian_pair()
    {
        const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        return {rad * std::cos(2.0 * pi * u2), rad * std::sin(2.0 * pi * u2)};
    }

    /// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
    std::complex<double> complex_gaussian(double variance)
    {
        const auto [g1, g2] = gaussian_pair();
        const double s = std::sqrt(variance / 2.0);
        return {s * g1, s * g2};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace nfsim

#endif
