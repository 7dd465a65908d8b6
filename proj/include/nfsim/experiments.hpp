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

#ifndef NFSIM_EXPERIMENTS_HPP
#define NFSIM_EXPERIMENTS_HPP

#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "channel.hpp"
#include "codebook.hpp"
#include "stochastic.hpp"
#include "training.hpp"

namespace nfsim {

enum class sweep_kind { gain_vs_distance, rate_vs_snr, phase_profile, pdp };
enum class channel_model { nf_sns, nf_stationary, ff_planar };

inline const char *to_string(channel_model m)
{
    switch (m)
    {
    case channel_model::nf_sns: return "nf_sns";
    case channel_model::nf_stationary: return "nf_stationary";
    case channel_model::ff_planar: return "ff_planar";
    }
    return "?";
}

inline const char *to_string(codebook_kind k)
{
    return k == codebook_kind::ff ? "ff" : "nf";
}

struct sweep_spec {
    sweep_kind kind = sweep_kind::gain_vs_distance;
    scenario_config scenario;
    std::vector<double> distance_grid_m; // gain sweep x-axis
    std::vector<double> snr_grid_db;     // rate sweep x-axis
    std::size_t drops_per_point = 100;
    channel_model model = channel_model::nf_sns;
    std::vector<codebook_kind> codebooks{codebook_kind::ff, codebook_kind::nf};
    double beta = 1.6;
    double r_floor_m = 5.0;
    double delay_bin_s = 2e-8;
    double profile_distance_m = 14.0;
    double pdp_distance_m = 14.0;
    std::size_t drop_index = 0; // for the single-drop outputs
    unsigned workers = 0;       // 0 means hardware concurrency

    void validate() const
    {
        scenario.validate();
        if (drops_per_point < 1)
            throw std::invalid_argument("sweep_spec: drops_per_point must be >= 1");
        if (codebooks.empty())
            throw std::invalid_argument("sweep_spec: at least one codebook required");
        if (!(beta > 0.0) || !(r_floor_m > 0.0))
            throw std::invalid_argument("sweep_spec: beta and r_floor must be positive");
        if (!(delay_bin_s > 0.0))
            throw std::invalid_argument("sweep_spec: delay_bin must be positive");
        if (!(profile_distance_m > 0.0) || !(pdp_distance_m > 0.0))
            throw std::invalid_argument("sweep_spec: single-drop distances must be positive");
        const auto check_grid = [](const std::vector<double> &g, const char *name) {
            if (g.empty())
                throw std::invalid_argument(std::string("sweep_spec: empty ") + name);
            for (std::size_t i = 1; i < g.size(); ++i)
                if (!(g[i] > g[i - 1]))
                    throw std::invalid_argument(std::string("sweep_spec: ") + name +
                                                " must be strictly increasing");
        };
        if (kind == sweep_kind::gain_vs_distance)
            check_grid(distance_grid_m, "distance grid");
        if (kind == sweep_kind::rate_vs_snr)
            check_grid(snr_grid_db, "SNR grid");
    }
};

struct sweep_row {
    double x_value = 0.0;
    std::size_t drop_index = 0;
    channel_model model = channel_model::nf_sns;
    codebook_kind book = codebook_kind::ff;
    double best_gain_db = 0.0;
    double rate_bps_hz = 0.0;
    int best_n = 0;
    int best_s = 0;
    std::size_t codebook_size = 0;
};

/// Rows in canonical order: grid value, then drop index, then codebook.
struct sweep_result {
    sweep_kind kind = sweep_kind::gain_vs_distance;
    std::vector<sweep_row> rows;
};

struct aggregate_row {
    double x_value = 0.0;
    channel_model model = channel_model::nf_sns;
    codebook_kind book = codebook_kind::ff;
    std::size_t drops = 0;
    double mean_best_gain_db = 0.0; // dB of the mean linear gain
    double mean_rate_bps_hz = 0.0;
    std::size_t codebook_size = 0;
};

namespace detail {

/// Runs fn(i) for i in [0, count) on the requested number of workers. Work
/// items must write only to their own output slots; the result is then
/// independent of the worker count and of scheduling order.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &fn)
{
    unsigned nw = workers == 0 ? std::thread::hardware_concurrency() : workers;
    if (nw == 0)
        nw = 1;
    if (nw == 1 || count <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

inline std::vector<const codebook *> book_ptrs(const std::vector<codebook_kind> &kinds,
                                               const codebook &ff, const codebook &nf)
{
    std::vector<const codebook *> out;
    for (const auto k : kinds)
        out.push_back(k == codebook_kind::ff ? &ff : &nf);
    return out;
}

} // namespace detail

/// Beam-gain sweep over distance. Each drop contributes the unit-norm LoS
/// steering direction under the selected wavefront model; both books then
/// scan it exhaustively. Drop streams depend only on (master_seed,
/// drop_index), so the same user angles recur at every grid distance.
inline sweep_result run_gain_sweep(const sweep_spec &spec)
{
    if (spec.kind != sweep_kind::gain_vs_distance)
        throw std::invalid_argument("run_gain_sweep: wrong sweep kind");
    spec.validate();

    const codebook ff = build_ff_codebook(spec.scenario.geometry);
    const codebook nf = build_nf_codebook(spec.scenario.geometry, spec.beta, spec.r_floor_m);
    const auto books = detail::book_ptrs(spec.codebooks, ff, nf);

    const std::size_t n_points = spec.distance_grid_m.size();
    const std::size_t n_drops = spec.drops_per_point;
    const std::size_t n_books = books.size();

    sweep_result result;
    result.kind = spec.kind;
    result.rows.resize(n_points * n_drops * n_books);

    detail::parallel_for(n_points * n_drops, spec.workers, [&](std::size_t item) {
        const std::size_t pi = item / n_drops;
        const std::size_t di = item % n_drops;
        const double r = spec.distance_grid_m[pi];
        const drop d = sample_drop(spec.scenario, di, r);

        const cvec h_dir = spec.model == channel_model::ff_planar
                               ? ff_steering(spec.scenario.geometry, d.user.theta).entries
                               : nf_steering(spec.scenario.geometry, d.user).entries;

        for (std::size_t bi = 0; bi < n_books; ++bi)
        {
            const training_outcome out = exhaustive_search(h_dir, *books[bi]);
            sweep_row row;
            row.x_value = r;
            row.drop_index = di;
            row.model = spec.model;
            row.book = spec.codebooks[bi];
            row.best_gain_db = out.gain_db;
            row.rate_bps_hz = 0.0; // not evaluated in the gain sweep
            row.best_n = out.best_n;
            row.best_s = out.best_s;
            row.codebook_size = out.codebook_size;
            result.rows[item * n_books + bi] = row;
        }
    });
    return result;
}

/// Achievable-rate sweep over transmit SNR. Each drop is a full multipath
/// realization (LoS + NLoS, masked per the wavefront model); the selected
/// codeword does not depend on the SNR, so the scan runs once per drop and
/// the rate is evaluated on every grid point.
inline sweep_result run_rate_sweep(const sweep_spec &spec)
{
    if (spec.kind != sweep_kind::rate_vs_snr)
        throw std::invalid_argument("run_rate_sweep: wrong sweep kind");
    spec.validate();

    const codebook ff = build_ff_codebook(spec.scenario.geometry);
    const codebook nf = build_nf_codebook(spec.scenario.geometry, spec.beta, spec.r_floor_m);
    const auto books = detail::book_ptrs(spec.codebooks, ff, nf);

    const std::size_t n_points = spec.snr_grid_db.size();
    const std::size_t n_drops = spec.drops_per_point;
    const std::size_t n_books = books.size();
    const double fc = spec.scenario.geometry.carrier_frequency_hz;

    sweep_result result;
    result.kind = spec.kind;
    result.rows.resize(n_points * n_drops * n_books);

    detail::parallel_for(n_drops, spec.workers, [&](std::size_t di) {
        drop d = sample_drop(spec.scenario, di);
        if (spec.model != channel_model::nf_sns)
            d.mask = sns_mask::all_ones(spec.scenario.geometry.num_elements, d.paths.size());
        const channel_realization cr =
            make_realization(spec.scenario.geometry, d.user, d.paths, d.mask, {fc},
                             spec.model == channel_model::ff_planar);
        const cvec &h = cr.h_sns.front();

        for (std::size_t bi = 0; bi < n_books; ++bi)
        {
            const training_outcome out = exhaustive_search(h, *books[bi]);
            const codeword &w = books[bi]->codewords[out.best_index];
            for (std::size_t pi = 0; pi < n_points; ++pi)
            {
                const double snr = std::pow(10.0, spec.snr_grid_db[pi] / 10.0);
                sweep_row row;
                row.x_value = spec.snr_grid_db[pi];
                row.drop_index = di;
                row.model = spec.model;
                row.book = spec.codebooks[bi];
                row.best_gain_db = out.gain_db;
                row.rate_bps_hz = achievable_rate(h, w, snr);
                row.best_n = out.best_n;
                row.best_s = out.best_s;
                row.codebook_size = out.codebook_size;
                result.rows[(pi * n_drops + di) * n_books + bi] = row;
            }
        }
    });
    return result;
}

/// Per-(x, codebook) means in row order. Gains are averaged on the linear
/// scale and reported as dB of the mean; rates are averaged directly. The
/// reduction runs over the already-gathered rows in canonical order, so the
/// result is bit-identical for any worker count.
inline std::vector<aggregate_row> aggregate_mean(const sweep_result &result,
                                                 const std::vector<codebook_kind> &books)
{
    std::vector<aggregate_row> out;
    if (result.rows.empty())
        return out;

    for (std::size_t begin = 0; begin < result.rows.size();)
    {
        const double x = result.rows[begin].x_value;
        std::size_t end = begin;
        while (end < result.rows.size() && result.rows[end].x_value == x)
            ++end;
        for (const auto bk : books)
        {
            aggregate_row agg;
            agg.x_value = x;
            agg.model = result.rows[begin].model;
            agg.book = bk;
            double gain_sum = 0.0;
            double rate_sum = 0.0;
            for (std::size_t i = begin; i < end; ++i)
            {
                if (result.rows[i].book != bk)
                    continue;
                gain_sum += std::pow(10.0, result.rows[i].best_gain_db / 20.0);
                rate_sum += result.rows[i].rate_bps_hz;
                agg.codebook_size = result.rows[i].codebook_size;
                ++agg.drops;
            }
            if (agg.drops == 0)
                continue;
            agg.mean_best_gain_db = 20.0 * std::log10(gain_sum / static_cast<double>(agg.drops));
            agg.mean_rate_bps_hz = rate_sum / static_cast<double>(agg.drops);
            out.push_back(agg);
        }
        begin = end;
    }
    return out;
}

/// Unwrapped LoS phase per element under the planar and the exact spherical
/// model, at one drop geometry.
struct phase_profile_output {
    double distance_m = 0.0;
    double theta = 0.0;
    std::vector<double> ff_phase_rad;
    std::vector<double> nf_phase_rad;
};

inline phase_profile_output run_phase_profile(const sweep_spec &spec)
{
    spec.validate();
    const drop d = sample_drop(spec.scenario, spec.drop_index, spec.profile_distance_m);
    phase_profile_output out;
    out.distance_m = spec.profile_distance_m;
    out.theta = d.user.theta;
    out.ff_phase_rad = phase_profile(ff_steering(spec.scenario.geometry, d.user.theta));
    out.nf_phase_rad = phase_profile(nf_steering(spec.scenario.geometry, d.user));
    return out;
}

/// Element-by-delay-bin power maps for one drop, under the SnS mask and
/// under the stationary (all-ones) mask.
struct pdp_output {
    double distance_m = 0.0;
    std::size_t drop_index = 0;
    pdp_matrix sns;
    pdp_matrix stationary;
};

inline pdp_output run_pdp(const sweep_spec &spec)
{
    spec.validate();
    const double fc = spec.scenario.geometry.carrier_frequency_hz;
    const drop d = sample_drop(spec.scenario, spec.drop_index, spec.pdp_distance_m);

    pdp_output out;
    out.distance_m = spec.pdp_distance_m;
    out.drop_index = spec.drop_index;
    const channel_realization sns_cr =
        make_realization(spec.scenario.geometry, d.user, d.paths, d.mask, {fc});
    const channel_realization ss_cr = make_realization(
        spec.scenario.geometry, d.user, d.paths,
        sns_mask::all_ones(spec.scenario.geometry.num_elements, d.paths.size()), {fc});
    out.sns = compute_pdp(sns_cr, spec.delay_bin_s);
    out.stationary = compute_pdp(ss_cr, spec.delay_bin_s);
    return out;
}

} // namespace nfsim

#endif
