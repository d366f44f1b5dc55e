// SPDX-License-Identifier: Apache-2.0
//
// iasim: link-level simulator for K-user MIMO interference networks
// Copyright (C) 2026 The iasim authors
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
#include "iasim/experiments.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace iasim {

namespace {

std::vector<double> range(double start, double step, double stop)
{
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9; v += step)
        out.push_back(v);
    return out;
}

ExperimentConfig ber_preset(std::string name, int k, int nt, int nr)
{
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.sweep.experiment = std::move(name);
    cfg.sweep.base.users = k;
    cfg.sweep.base.nt = nt;
    cfg.sweep.base.nr = nr;
    cfg.sweep.base.rate_per_pair = 2;
    cfg.sweep.modes = {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm};
    cfg.sweep.loading = {false};
    cfg.sweep.snr_db = range(0.0, 5.0, 30.0);
    cfg.sweep.epsilon = {0.0, 0.05, 0.1};
    return cfg;
}

void timestamp_line(std::ostream &os)
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    os << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

} // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}; }

ExperimentConfig preset(std::string_view name)
{
    if (name == "fig1")
    {
        ExperimentConfig cfg;
        cfg.name = "fig1";
        cfg.kind = ExperimentConfig::Kind::SignalStats;
        cfg.sweep.experiment = "fig1";
        cfg.sweep.base.users = 3;
        cfg.sweep.base.nt = 3;
        cfg.sweep.base.nr = 2;
        cfg.powers = {1.0, 10.0, 1e2, 1e3, 1e4};
        cfg.frames = 10000;
        return cfg;
    }
    if (name == "fig2")
        return ber_preset("fig2", 3, 2, 2);
    if (name == "fig3")
        return ber_preset("fig3", 3, 3, 2);
    if (name == "fig4")
        return ber_preset("fig4", 4, 3, 2);
    if (name == "fig5")
    {
        auto cfg = ber_preset("fig5", 3, 2, 2);
        cfg.sweep.snr_db = {20.0};
        cfg.sweep.epsilon = {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
        return cfg;
    }
    if (name == "fig6")
    {
        auto cfg = ber_preset("fig6", 3, 2, 2);
        cfg.sweep.modes = {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm, Mode::Adaptive};
        cfg.sweep.loading = {true};
        cfg.sweep.epsilon = {0.0};
        return cfg;
    }
    if (name == "fig7")
    {
        auto cfg = ber_preset("fig7", 3, 2, 2);
        cfg.sweep.modes = {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm, Mode::Adaptive};
        cfg.sweep.loading = {true};
        cfg.sweep.snr_db = {15.0};
        cfg.sweep.epsilon = {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
        return cfg;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows, bool timestamp)
{
    if (timestamp)
        timestamp_line(os);
    os << "experiment,mode,loading,K,nt,nr,snr_db,epsilon,bits,errors,ber,ci95,analytic_ber\n";
    os << std::setprecision(10);
    for (const auto &r : rows)
    {
        const BerEstimate &b = r.run.ber;
        os << r.experiment << ',' << mode_name(r.mode) << ',' << (r.loading ? 1 : 0) << ',' << r.users << ','
           << r.nt << ',' << r.nr << ',' << r.snr_db << ',' << r.epsilon << ',' << b.bits_sent << ','
           << b.bit_errors << ',' << b.estimate << ',' << b.ci95 << ',';
        if (r.analytic)
            os << *r.analytic;
        os << '\n';
    }
}

void write_signal_csv(std::ostream &os, const ExperimentConfig &cfg, const std::vector<Fig1Row> &rows,
                      bool timestamp)
{
    if (timestamp)
        timestamp_line(os);
    os << "experiment,K,nt,nr,power,maxsinr_signal,maxsinr_leakage,minil_signal,beamforming_signal\n";
    os << std::setprecision(10);
    const auto &n = cfg.sweep.base;
    for (const auto &r : rows)
        os << cfg.name << ',' << n.users << ',' << n.nt << ',' << n.nr << ',' << r.power << ',' << r.maxsinr_signal
           << ',' << r.maxsinr_leakage << ',' << r.minil_signal << ',' << r.beamforming_signal << '\n';
}

std::filesystem::path run_experiment(ExperimentConfig cfg, const RunOptions &opts)
{
    if (opts.seed)
        cfg.sweep.base.seed = *opts.seed;
    if (opts.workers)
        cfg.sweep.stop.workers = *opts.workers;
    if (opts.target_errors)
        cfg.sweep.stop.target_errors = *opts.target_errors;
    if (opts.max_bits)
        cfg.sweep.stop.max_bits = *opts.max_bits;
    cfg.sweep.experiment = cfg.name;
    cfg.validate();

    std::ostringstream csv;
    if (cfg.kind == ExperimentConfig::Kind::SignalStats)
        write_signal_csv(csv, cfg, fig1_stats(cfg.sweep.base, cfg.powers, cfg.frames, cfg.sweep.stop.workers),
                         opts.timestamp);
    else
        write_sweep_csv(csv, sweep(cfg.sweep), opts.timestamp);

    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + opts.out_dir.string() + ": " + ec.message());
    const auto path = opts.out_dir / (cfg.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << csv.str();
    out.close();
    if (!out)
        throw std::runtime_error("error writing " + path.string());
    return path;
}

} // namespace iasim
