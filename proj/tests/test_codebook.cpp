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

#include <catch2/catch_amalgamated.hpp>

#include <nfsim/codebook.hpp>
#include <nfsim/rng.hpp>

using namespace nfsim;

namespace {

// true 15 GHz half-wavelength ULA
array_geometry ula150()
{
    const double lam = speed_of_light / 15e9;
    return make_ula(150, lam / 2.0, 15e9);
}

// geometry pinned to the exact d = 0.01, lambda = 0.02 desk numbers
array_geometry ula150_desk()
{
    return make_ula(150, 0.01, speed_of_light / 0.02);
}

} // namespace

TEST_CASE("far-field codebook angle grid")
{
    const auto g4 = make_ula(4, 0.01, speed_of_light / 0.02);
    const auto book = build_ff_codebook(g4);
    REQUIRE(book.size() == 4);
    const double grid[4] = {-0.75, -0.25, 0.25, 0.75};
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(book.codewords[i].theta == Catch::Approx(grid[i]).margin(1e-15));
        CHECK(std::isinf(book.codewords[i].r_m));
        CHECK(book.codewords[i].n == static_cast<int>(i + 1));
        CHECK(book.codewords[i].s == 0);
    }

    const auto book1 = build_ff_codebook(make_ula(1, 0.01, 15e9));
    REQUIRE(book1.size() == 1);
    CHECK(book1.codewords[0].theta == 0.0);
    CHECK(book1.codewords[0].weights[0] == std::complex<double>{1.0, 0.0});

    CHECK_THROWS_AS(build_ff_codebook(make_uca(8, 0.5, 15e9)), std::invalid_argument);
}

TEST_CASE("half-wavelength DFT codebook is orthonormal")
{
    const double lam = speed_of_light / 15e9;
    const auto book = build_ff_codebook(make_ula(8, lam / 2.0, 15e9));
    for (std::size_t p = 0; p < 8; ++p)
        for (std::size_t q = 0; q < 8; ++q)
        {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t m = 0; m < 8; ++m)
                acc += std::conj(book.codewords[p].weights[m]) * book.codewords[q].weights[m];
            CHECK(std::abs(acc - (p == q ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("distance ring sampling")
{
    const auto g = ula150_desk();
    const auto rings = distance_rings(g, 0.0, 1.6, 5.0);
    REQUIRE(rings.size() == 5);
    CHECK(std::isinf(rings[0]));
    CHECK(rings[1] == Catch::Approx(21.972656250).epsilon(1e-9));
    CHECK(rings[2] == Catch::Approx(10.986328125).epsilon(1e-9));
    CHECK(rings[3] == Catch::Approx(7.3242187500).epsilon(1e-9));
    CHECK(rings[4] == Catch::Approx(5.4931640625).epsilon(1e-9));

    // endfire angles carry only the far-field ring
    CHECK(distance_rings(g, 1.0, 1.6, 5.0) == std::vector<double>{inf});
    CHECK(distance_rings(g, -1.0, 1.6, 5.0) == std::vector<double>{inf});

    // strictly decreasing past the leading infinity
    rng_stream rng(1);
    for (int i = 0; i < 20; ++i)
    {
        const auto rr = distance_rings(g, rng.uniform(-1.0, 1.0), 1.6, 2.0);
        for (std::size_t s = 2; s < rr.size(); ++s)
            CHECK(rr[s] < rr[s - 1]);
    }

    CHECK_THROWS_AS(distance_rings(g, 0.0, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(distance_rings(g, 0.0, 1.6, 0.0), std::invalid_argument);
}

TEST_CASE("polar codebook structure")
{
    const auto g = ula150_desk();
    const auto nf = build_nf_codebook(g, 1.6, 5.0);
    const auto ff = build_ff_codebook(g);

    // the s = 0 layer is the far-field codebook, entry for entry
    std::size_t s0_count = 0;
    std::size_t ff_i = 0;
    for (const auto &w : nf.codewords)
    {
        if (w.s != 0)
            continue;
        REQUIRE(ff_i < ff.size());
        CHECK(w.theta == ff.codewords[ff_i].theta);
        for (std::size_t m = 0; m < w.weights.size(); ++m)
        {
            CHECK(w.weights[m].real() == ff.codewords[ff_i].weights[m].real());
            CHECK(w.weights[m].imag() == ff.codewords[ff_i].weights[m].imag());
        }
        ++s0_count;
        ++ff_i;
    }
    CHECK(s0_count == 150);

    // finite-ring codewords are the steering vectors at their labels
    for (std::size_t i = 0; i < nf.size(); i += 37)
    {
        const auto &w = nf.codewords[i];
        if (w.s == 0)
            continue;
        const auto a = nf_steering(g, polar_point{w.theta, w.r_m});
        for (std::size_t m = 0; m < w.weights.size(); ++m)
            CHECK(w.weights[m] == a.entries[m]);
    }

    // the angle nearest broadside carries the full five rings
    std::size_t best_n = 0;
    double best_abs = 2.0;
    for (const auto &w : ff.codewords)
        if (std::abs(w.theta) < best_abs)
        {
            best_abs = std::abs(w.theta);
            best_n = static_cast<std::size_t>(w.n);
        }
    std::size_t rings_at_broadside = 0;
    for (const auto &w : nf.codewords)
        if (static_cast<std::size_t>(w.n) == best_n)
            ++rings_at_broadside;
    CHECK(rings_at_broadside == 5);

    // a floor above the first ring collapses the book onto the FF grid
    const auto collapsed = build_nf_codebook(g, 1.6, 50.0);
    REQUIRE(collapsed.size() == 150);
    for (const auto &w : collapsed.codewords)
        CHECK(w.s == 0);

    CHECK_THROWS_AS(build_nf_codebook(make_uca(8, 0.5, 15e9), 1.6, 5.0), std::invalid_argument);
}

TEST_CASE("codewords are unit-norm and constant-modulus")
{
    const auto nf = build_nf_codebook(make_ula(16, 0.00999308193333, 15e9), 1.6, 2.0);
    for (const auto &w : nf.codewords)
    {
        double nrm = 0.0;
        for (const auto &x : w.weights)
        {
            CHECK(std::abs(std::abs(x) - 0.25) < 1e-12); // 1/sqrt(16)
            nrm += std::norm(x);
        }
        CHECK(std::abs(std::sqrt(nrm) - 1.0) < 1e-12);
    }
}

TEST_CASE("column coherence")
{
    const auto g = ula150();

    CHECK(column_coherence(g, 0.3, 25.0, 25.0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(column_coherence(make_ula(1, 0.01, 15e9), 0.5, 10.0, 30.0) ==
          Catch::Approx(1.0).margin(1e-12));

    // adjacent rings hit the beta = 1.6 design point of roughly one half
    const auto rings = distance_rings(g, 0.0, 1.6, 5.0);
    REQUIRE(rings.size() >= 3);
    for (std::size_t s = 0; s + 1 < rings.size(); ++s)
    {
        const double c = column_coherence(g, 0.0, rings[s], rings[s + 1]);
        CHECK(c >= 0.35);
        CHECK(c <= 0.65);
    }
}

TEST_CASE("gain metrics ignore a global codeword phase")
{
    const auto g = make_ula(12, 0.00999308193333, 15e9);
    const auto h = nf_steering(g, polar_point{0.21, 9.0}).entries;
    const auto w = ff_steering(g, 0.25).entries;
    rng_stream rng(4);
    for (int i = 0; i < 10; ++i)
    {
        const double phase = rng.uniform(0.0, 2.0 * pi);
        std::complex<double> base{0.0, 0.0}, rotated{0.0, 0.0};
        for (std::size_t m = 0; m < h.size(); ++m)
        {
            base += std::conj(h[m]) * w[m];
            rotated += std::conj(h[m]) * (std::polar(1.0, phase) * w[m]);
        }
        CHECK(std::abs(std::abs(base) - std::abs(rotated)) < 1e-12);
    }
}
