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

#include <nfsim/geometry.hpp>

using namespace nfsim;

TEST_CASE("ULA element positions are centered on the y-axis")
{
    const auto p2 = element_positions(make_ula(2, 0.01, 15e9));
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].x == 0.0);
    CHECK(p2[0].y == Catch::Approx(-0.005).margin(1e-15));
    CHECK(p2[1].y == Catch::Approx(0.005).margin(1e-15));

    // odd N puts an element exactly at the origin
    const auto p3 = element_positions(make_ula(3, 0.01, 15e9));
    CHECK(p3[1].x == 0.0);
    CHECK(p3[1].y == 0.0);
    CHECK(p3[0].y == Catch::Approx(-0.01).margin(1e-15));
    CHECK(p3[2].y == Catch::Approx(0.01).margin(1e-15));
}

TEST_CASE("UCA element positions trace the circle")
{
    const auto p = element_positions(make_uca(4, 0.5, 29e9));
    REQUIRE(p.size() == 4);
    CHECK(p[0].x == Catch::Approx(0.5).margin(1e-12));
    CHECK(p[0].y == Catch::Approx(0.0).margin(1e-12));
    CHECK(p[1].x == Catch::Approx(0.0).margin(1e-12));
    CHECK(p[1].y == Catch::Approx(0.5).margin(1e-12));
    CHECK(p[2].x == Catch::Approx(-0.5).margin(1e-12));
    CHECK(p[3].y == Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("element position centroid is the origin")
{
    for (const std::size_t n : {1u, 2u, 7u, 150u})
    {
        const auto pos = element_positions(make_ula(n, 0.013, 10e9));
        double sx = 0.0, sy = 0.0;
        for (const auto &p : pos)
        {
            sx += p.x;
            sy += p.y;
        }
        CHECK(std::abs(sx) < 1e-12);
        CHECK(std::abs(sy) < 1e-12);
    }
}

TEST_CASE("Rayleigh distance anchors")
{
    // 1 m aperture UCA at 29 GHz
    const auto uca = make_uca(64, 0.5, 29e9);
    CHECK(rayleigh_distance(uca) == Catch::Approx(193.4671752149282).epsilon(1e-12));

    // aperture 1.49 m at an exact 0.02 m wavelength
    const auto ula = make_ula(150, 1.49 / 149.0, speed_of_light / 0.02);
    CHECK(rayleigh_distance(ula) == Catch::Approx(222.01).epsilon(1e-12));

    // single element has zero aperture
    CHECK(rayleigh_distance(make_ula(1, 0.01, 15e9)) == 0.0);
}

TEST_CASE("Fresnel distance anchors")
{
    const auto ula = make_ula(150, 1.49 / 149.0, speed_of_light / 0.02);
    CHECK(fresnel_distance(ula) == Catch::Approx(7.973630276103853).epsilon(1e-12));

    const auto uca = make_uca(64, 0.5, speed_of_light / 0.0103448);
    CHECK(fresnel_distance(uca) == Catch::Approx(6.095799025288537).epsilon(1e-12));

    CHECK(fresnel_distance(make_ula(1, 0.01, 15e9)) == 0.0);
}

TEST_CASE("field boundaries order and scaling")
{
    // fresnel < rayleigh for every aperture at least one wavelength across
    for (const double d : {0.005, 0.01, 0.02, 0.1})
        for (const std::size_t n : {4u, 16u, 150u})
        {
            const auto g = make_ula(n, d, 15e9);
            if (g.aperture() >= g.wavelength())
                CHECK(fresnel_distance(g) < rayleigh_distance(g));
        }

    // doubling the ULA spacing quadruples the Rayleigh distance exactly
    const auto a = make_ula(32, 0.01, 15e9);
    const auto b = make_ula(32, 0.02, 15e9);
    CHECK(rayleigh_distance(b) == 4.0 * rayleigh_distance(a));
}

TEST_CASE("geometry validation")
{
    array_geometry g;
    g.num_elements = 0;
    g.spacing_m = 0.01;
    g.carrier_frequency_hz = 1e9;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_ula(4, 0.0, 1e9), std::invalid_argument);
    CHECK_THROWS_AS(make_ula(4, 0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_uca(4, -1.0, 1e9), std::invalid_argument);
}
