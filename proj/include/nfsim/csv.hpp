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

#ifndef NFSIM_CSV_HPP
#define NFSIM_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "channel.hpp"
#include "codebook.hpp"
#include "experiments.hpp"

namespace nfsim {

/// 17 significant digits: enough to reproduce any IEEE double exactly on
/// parse, so text round trips are lossless.
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string to_csv(const sweep_result &result)
{
    std::string out = "x_value,drop_index,channel_model,codebook,best_gain_db,rate_bps_hz,"
                      "best_n,best_s,codebook_size\n";
    for (const auto &r : result.rows)
    {
        out += format_double(r.x_value);
        out += ',' + std::to_string(r.drop_index);
        out += ',';
        out += to_string(r.model);
        out += ',';
        out += to_string(r.book);
        out += ',' + format_double(r.best_gain_db);
        out += ',' + format_double(r.rate_bps_hz);
        out += ',' + std::to_string(r.best_n);
        out += ',' + std::to_string(r.best_s);
        out += ',' + std::to_string(r.codebook_size);
        out += '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<aggregate_row> &rows)
{
    std::string out = "x_value,channel_model,codebook,drops,mean_best_gain_db,"
                      "mean_rate_bps_hz,codebook_size\n";
    for (const auto &r : rows)
    {
        out += format_double(r.x_value);
        out += ',';
        out += to_string(r.model);
        out += ',';
        out += to_string(r.book);
        out += ',' + std::to_string(r.drops);
        out += ',' + format_double(r.mean_best_gain_db);
        out += ',' + format_double(r.mean_rate_bps_hz);
        out += ',' + std::to_string(r.codebook_size);
        out += '\n';
    }
    return out;
}

inline std::string to_csv(const phase_profile_output &p)
{
    std::string out = "element,phase_ff_rad,phase_nf_rad\n";
    for (std::size_t m = 0; m < p.ff_phase_rad.size(); ++m)
        out += std::to_string(m) + ',' + format_double(p.ff_phase_rad[m]) + ',' +
               format_double(p.nf_phase_rad[m]) + '\n';
    return out;
}

inline std::string to_csv(const pdp_output &p)
{
    std::string out = "model,element,delay_bin,delay_s,power\n";
    const auto emit = [&out](const char *model, const pdp_matrix &pdp) {
        for (std::size_t m = 0; m < pdp.num_elements; ++m)
            for (std::size_t b = 0; b < pdp.num_bins; ++b)
            {
                out += model;
                out += ',' + std::to_string(m);
                out += ',' + std::to_string(b);
                out += ',' + format_double(static_cast<double>(b) * pdp.bin_s);
                out += ',' + format_double(pdp.at(m, b));
                out += '\n';
            }
    };
    emit("nf_sns", p.sns);
    emit("nf_stationary", p.stationary);
    return out;
}

inline std::string to_csv(const codebook &book)
{
    std::string out = "n,s,theta,r_m,element,Re(w),Im(w)\n";
    for (const auto &w : book.codewords)
        for (std::size_t m = 0; m < w.weights.size(); ++m)
        {
            out += std::to_string(w.n);
            out += ',' + std::to_string(w.s);
            out += ',' + format_double(w.theta);
            out += ',' + format_double(w.r_m);
            out += ',' + std::to_string(m);
            out += ',' + format_double(w.weights[m].real());
            out += ',' + format_double(w.weights[m].imag());
            out += '\n';
        }
    return out;
}

/// Factor-matrix CSV of a single-frequency realization:
/// element,path,S,Re(A),Im(A).
inline std::string realization_factors_csv(const channel_realization &cr)
{
    const cmat &a = cr.manifolds.front();
    std::string out = "element,path,S,Re(A),Im(A)\n";
    for (std::size_t m = 0; m < a.rows; ++m)
        for (std::size_t k = 0; k < a.cols; ++k)
        {
            out += std::to_string(m);
            out += ',' + std::to_string(k);
            out += ',' + format_double(cr.mask.at(m, k));
            out += ',' + format_double(a.at(m, k).real());
            out += ',' + format_double(a.at(m, k).imag());
            out += '\n';
        }
    return out;
}

/// Sidecar path list: k,Re(alpha),Im(alpha),tau_s,x_m,y_m,kind.
inline std::string realization_paths_csv(const channel_realization &cr)
{
    std::string out = "k,Re(alpha),Im(alpha),tau_s,x_m,y_m,kind\n";
    for (std::size_t k = 0; k < cr.paths.size(); ++k)
    {
        const path &p = cr.paths[k];
        out += std::to_string(k);
        out += ',' + format_double(p.amplitude.real());
        out += ',' + format_double(p.amplitude.imag());
        out += ',' + format_double(p.delay_s);
        out += ',' + format_double(p.first_scatterer.x);
        out += ',' + format_double(p.first_scatterer.y);
        out += ',';
        out += p.kind == path_kind::los ? "los" : "nlos";
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    return fields;
}

} // namespace detail

/// Factors and paths loaded back from the text form. The carrier frequency
/// and geometry are not part of the schema; a consumer recomposes h via
/// cfr_paths and compose_sns with its own frequency context.
struct loaded_realization {
    sns_mask mask;
    cmat manifold;
    std::vector<path> paths;
};

inline loaded_realization load_realization(const std::string &factors_csv,
                                           const std::string &paths_csv)
{
    loaded_realization lr;

    std::istringstream pin(paths_csv);
    std::string line;
    if (!std::getline(pin, line) || line.rfind("k,", 0) != 0)
        throw std::invalid_argument("load_realization: bad paths header");
    while (std::getline(pin, line))
    {
        if (line.empty())
            continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 7)
            throw std::invalid_argument("load_realization: bad paths row");
        path p;
        p.amplitude = {std::stod(f[1]), std::stod(f[2])};
        p.delay_s = std::stod(f[3]);
        p.first_scatterer = vec2{std::stod(f[4]), std::stod(f[5])};
        p.kind = f[6] == "los" ? path_kind::los : path_kind::nlos;
        lr.paths.push_back(p);
    }

    std::istringstream fin(factors_csv);
    if (!std::getline(fin, line) || line.rfind("element,", 0) != 0)
        throw std::invalid_argument("load_realization: bad factors header");
    std::size_t max_m = 0;
    struct entry {
        std::size_t m, k;
        double s, re, im;
    };
    std::vector<entry> entries;
    while (std::getline(fin, line))
    {
        if (line.empty())
            continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 5)
            throw std::invalid_argument("load_realization: bad factors row");
        entry e;
        e.m = std::stoul(f[0]);
        e.k = std::stoul(f[1]);
        e.s = std::stod(f[2]);
        e.re = std::stod(f[3]);
        e.im = std::stod(f[4]);
        max_m = std::max(max_m, e.m);
        entries.push_back(e);
    }

    const std::size_t n = max_m + 1;
    const std::size_t k = lr.paths.size();
    if (entries.size() != n * k)
        throw std::invalid_argument("load_realization: factor row count mismatch");
    lr.mask.num_elements = n;
    lr.mask.num_paths = k;
    lr.mask.values.assign(n * k, 0.0);
    lr.manifold = cmat(n, k);
    for (const auto &e : entries)
    {
        lr.mask.at(e.m, e.k) = e.s;
        lr.manifold.at(e.m, e.k) = {e.re, e.im};
    }
    return lr;
}

inline void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace nfsim

#endif
