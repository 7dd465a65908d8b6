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

#include <nfsim/config.hpp>
#include <nfsim/csv.hpp>
#include <nfsim/stochastic.hpp>

using namespace nfsim;

TEST_CASE("config parsing and defaults")
{
    const std::string text = "# comment line\n"
                             "layout = ULA\n"
                             "num_elements = 64   # trailing comment\n"
                             "carrier_frequency_hz = 15e9\n"
                             "spacing_m = 0\n"
                             "master_seed = 12345\n"
                             "rice_factor_db = inf\n"
                             "\n"
                             "drops_per_point = 7\n"
                             "channel_model = ff_planar\n"
                             "codebooks = nf\n";
    const sim_config cfg = parse_config(text);
    CHECK(cfg.scenario.geometry.num_elements == 64);
    // spacing 0 resolves to exactly half a wavelength
    CHECK(cfg.scenario.geometry.spacing_m == cfg.scenario.geometry.wavelength() / 2.0);
    CHECK(cfg.scenario.master_seed == 12345);
    CHECK(std::isinf(cfg.scenario.rice_factor_db));
    CHECK(cfg.drops_per_point == 7);
    CHECK(cfg.model == channel_model::ff_planar);
    REQUIRE(cfg.codebooks.size() == 1);
    CHECK(cfg.codebooks[0] == codebook_kind::nf);
}

TEST_CASE("config rejects malformed input")
{
    CHECK_THROWS_AS(parse_config("unknown_key = 3\n"), config_error);
    CHECK_THROWS_AS(parse_config("num_elements = banana\n"), config_error);
    CHECK_THROWS_AS(parse_config("layout = hexagonal\n"), config_error);
    CHECK_THROWS_AS(parse_config("num_elements 64\n"), config_error);
    CHECK_THROWS_AS(parse_config("num_elements =\n"), config_error);
    CHECK_THROWS_AS(parse_config("beta = 1.6\nbeta = 1.7\n"), config_error);
    CHECK_THROWS_AS(parse_config("layout = UCA\n"), config_error); // radius missing
    CHECK_THROWS_AS(parse_config("codebooks = dft\n"), config_error);
    // validation failures surface as config errors too
    CHECK_THROWS_AS(parse_config("r_min_m = 50\nr_max_m = 10\n"), config_error);
    CHECK_THROWS_AS(make_sweep_spec(parse_config("beta = -1\n"), sweep_kind::gain_vs_distance),
                    config_error);
}

TEST_CASE("grid construction")
{
    const auto grid = make_grid(5.0, 8.0, 1.0);
    REQUIRE(grid.size() == 4);
    CHECK(grid.front() == 5.0);
    CHECK(grid.back() == 8.0);
    CHECK_THROWS_AS(make_grid(5.0, 4.0, 1.0), config_error);
    CHECK_THROWS_AS(make_grid(5.0, 8.0, 0.0), config_error);

    const sim_config cfg = parse_config("num_elements = 8\n");
    const auto spec = make_sweep_spec(cfg, sweep_kind::gain_vs_distance);
    CHECK(spec.distance_grid_m.size() == 76); // 5..80 step 1
    CHECK(spec.snr_grid_db.size() == 7);      // 100..115 step 2.5
}

TEST_CASE("doubles survive the text round trip")
{
    rng_stream rng(31);
    for (int i = 0; i < 200; ++i)
    {
        const double v = rng.gaussian_pair().first * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(inf) == "inf");
}

TEST_CASE("channel realization round trip")
{
    scenario_config scenario;
    scenario.geometry = make_ula(16, 0.00999308193333, 15e9);
    scenario.master_seed = 99;
    scenario.vr_edge_fraction = 0.1; // exercise fractional mask values
    const drop d = sample_drop(scenario, 2, 14.0);
    const channel_realization cr = make_realization(
        scenario.geometry, d.user, d.paths, d.mask, {scenario.geometry.carrier_frequency_hz});

    const std::string factors = realization_factors_csv(cr);
    const std::string paths = realization_paths_csv(cr);
    const loaded_realization lr = load_realization(factors, paths);

    REQUIRE(lr.paths.size() == cr.paths.size());
    REQUIRE(lr.mask.values.size() == cr.mask.values.size());
    for (std::size_t i = 0; i < cr.mask.values.size(); ++i)
        CHECK(lr.mask.values[i] == cr.mask.values[i]);
    for (std::size_t i = 0; i < cr.manifolds[0].data.size(); ++i)
    {
        CHECK(lr.manifold.data[i].real() == cr.manifolds[0].data[i].real());
        CHECK(lr.manifold.data[i].imag() == cr.manifolds[0].data[i].imag());
    }
    for (std::size_t k = 0; k < cr.paths.size(); ++k)
    {
        CHECK(lr.paths[k].amplitude == cr.paths[k].amplitude);
        CHECK(lr.paths[k].delay_s == cr.paths[k].delay_s);
        CHECK(lr.paths[k].kind == cr.paths[k].kind);
    }

    // the loaded factors recompose the identical channel at the same frequency
    const cvec h = compose_sns(lr.mask, lr.manifold,
                               cfr_paths(lr.paths, scenario.geometry.carrier_frequency_hz));
    for (std::size_t m = 0; m < h.size(); ++m)
        CHECK(std::abs(h[m] - cr.h_sns[0][m]) <= 1e-15 * std::abs(cr.h_sns[0][m]) + 1e-30);

    CHECK_THROWS_AS(load_realization("wrong header\n", paths), std::invalid_argument);
    CHECK_THROWS_AS(load_realization(factors, "nope\n"), std::invalid_argument);
}

TEST_CASE("CSV headers and shapes")
{
    sweep_result result;
    result.kind = sweep_kind::gain_vs_distance;
    sweep_row row;
    row.x_value = 14.0;
    row.drop_index = 3;
    row.model = channel_model::nf_sns;
    row.book = codebook_kind::nf;
    row.best_gain_db = -1.25;
    row.best_n = 75;
    row.best_s = 2;
    row.codebook_size = 520;
    result.rows.push_back(row);

    const std::string csv = to_csv(result);
    CHECK(csv.rfind("x_value,drop_index,channel_model,codebook,best_gain_db,rate_bps_hz,"
                     "best_n,best_s,codebook_size\n",
                     0) == 0);
    CHECK(csv.find("14,3,nf_sns,nf,-1.25,0,75,2,520\n") != std::string::npos);

    const auto book = build_ff_codebook(make_ula(2, 0.01, 15e9));
    const std::string book_csv = to_csv(book);
    CHECK(book_csv.rfind("n,s,theta,r_m,element,Re(w),Im(w)\n", 0) == 0);
    CHECK(book_csv.find(",inf,") != std::string::npos); // far-field ring label
}
