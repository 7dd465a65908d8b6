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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <nfsim/nfsim.hpp>

namespace {

struct common_options {
    std::string config_path;
    std::string out_path;
    std::string aggregate;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    std::size_t drop_index = 0;
    std::optional<double> distance_m;
    std::string codebook_kind_name = "ff";
};

nfsim::sim_config load(const common_options &opt)
{
    nfsim::sim_config cfg = nfsim::parse_config(nfsim::read_file(opt.config_path));
    if (opt.seed)
        cfg.scenario.master_seed = *opt.seed;
    return cfg;
}

void run_sweep(const common_options &opt, nfsim::sweep_kind kind)
{
    const nfsim::sim_config cfg = load(opt);
    nfsim::sweep_spec spec = nfsim::make_sweep_spec(cfg, kind);
    spec.workers = opt.workers;
    const nfsim::sweep_result result = kind == nfsim::sweep_kind::gain_vs_distance
                                           ? nfsim::run_gain_sweep(spec)
                                           : nfsim::run_rate_sweep(spec);
    if (opt.aggregate == "mean")
        nfsim::write_file(opt.out_path, nfsim::to_csv(nfsim::aggregate_mean(result, spec.codebooks)));
    else
        nfsim::write_file(opt.out_path, nfsim::to_csv(result));
}

void run_profile(const common_options &opt)
{
    const nfsim::sim_config cfg = load(opt);
    nfsim::sweep_spec spec = nfsim::make_sweep_spec(cfg, nfsim::sweep_kind::phase_profile);
    spec.drop_index = opt.drop_index;
    if (opt.distance_m)
        spec.profile_distance_m = *opt.distance_m;
    nfsim::write_file(opt.out_path, nfsim::to_csv(nfsim::run_phase_profile(spec)));
}

void run_pdp_cmd(const common_options &opt)
{
    const nfsim::sim_config cfg = load(opt);
    nfsim::sweep_spec spec = nfsim::make_sweep_spec(cfg, nfsim::sweep_kind::pdp);
    spec.drop_index = opt.drop_index;
    if (opt.distance_m)
        spec.pdp_distance_m = *opt.distance_m;
    nfsim::write_file(opt.out_path, nfsim::to_csv(nfsim::run_pdp(spec)));
}

void run_codebook(const common_options &opt)
{
    const nfsim::sim_config cfg = load(opt);
    const nfsim::codebook book =
        opt.codebook_kind_name == "nf"
            ? nfsim::build_nf_codebook(cfg.scenario.geometry, cfg.beta, cfg.r_floor_m)
            : nfsim::build_ff_codebook(cfg.scenario.geometry);
    nfsim::write_file(opt.out_path, nfsim::to_csv(book));
}

void run_gen_channel(const common_options &opt)
{
    const nfsim::sim_config cfg = load(opt);
    const nfsim::drop d = nfsim::sample_drop(cfg.scenario, opt.drop_index, opt.distance_m);
    const nfsim::channel_realization cr =
        nfsim::make_realization(cfg.scenario.geometry, d.user, d.paths, d.mask,
                                {cfg.scenario.geometry.carrier_frequency_hz},
                                cfg.model == nfsim::channel_model::ff_planar);
    nfsim::write_file(opt.out_path, nfsim::realization_factors_csv(cr));
    const auto sidecar = std::filesystem::path(opt.out_path).parent_path() / "paths.csv";
    nfsim::write_file(sidecar.string(), nfsim::realization_paths_csv(cr));
}

void add_common(CLI::App *cmd, common_options &opt, bool with_out = true)
{
    cmd->add_option("--config", opt.config_path, "scenario/sweep configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    if (with_out)
        cmd->add_option("--out", opt.out_path, "output CSV path")->required();
    cmd->add_option("--seed", opt.seed, "override master_seed from the config");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"near-field XL-MIMO channel and beam-training simulator"};
    app.require_subcommand(1);

    common_options opt;

    auto *gain = app.add_subcommand("sweep-gain", "beam gain versus BS-UT distance");
    add_common(gain, opt);
    gain->add_option("--aggregate", opt.aggregate, "emit per-point means instead of raw rows")
        ->check(CLI::IsMember({"mean"}));
    gain->add_option("--workers", opt.workers, "worker threads (0 = auto)");

    auto *rate = app.add_subcommand("sweep-rate", "achievable rate versus transmit SNR");
    add_common(rate, opt);
    rate->add_option("--aggregate", opt.aggregate, "emit per-point means instead of raw rows")
        ->check(CLI::IsMember({"mean"}));
    rate->add_option("--workers", opt.workers, "worker threads (0 = auto)");

    auto *profile = app.add_subcommand("phase-profile", "unwrapped LoS phase per element");
    add_common(profile, opt);
    profile->add_option("--drop", opt.drop_index, "drop index");
    profile->add_option("--distance", opt.distance_m, "override profile distance in meters");

    auto *pdp = app.add_subcommand("pdp", "power delay profile heatmap data");
    add_common(pdp, opt);
    pdp->add_option("--drop", opt.drop_index, "drop index");
    pdp->add_option("--distance", opt.distance_m, "override drop distance in meters");

    auto *codebook = app.add_subcommand("codebook", "dump a beamforming codebook");
    add_common(codebook, opt);
    codebook->add_option("--kind", opt.codebook_kind_name, "codebook kind")
        ->check(CLI::IsMember({"ff", "nf"}));

    auto *gen = app.add_subcommand("gen-channel", "emit one channel realization with factors");
    add_common(gen, opt);
    gen->add_option("--drop", opt.drop_index, "drop index");
    gen->add_option("--distance", opt.distance_m, "fix the BS-UT distance in meters");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (gain->parsed())
            run_sweep(opt, nfsim::sweep_kind::gain_vs_distance);
        else if (rate->parsed())
            run_sweep(opt, nfsim::sweep_kind::rate_vs_snr);
        else if (profile->parsed())
            run_profile(opt);
        else if (pdp->parsed())
            run_pdp_cmd(opt);
        else if (codebook->parsed())
            run_codebook(opt);
        else if (gen->parsed())
            run_gen_channel(opt);
    }
    catch (const nfsim::config_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
