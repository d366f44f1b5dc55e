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
#include "iasim/simkit.hpp"

#include "iasim/ber_theory.hpp"
#include "iasim/ia_solvers.hpp"
#include "iasim/svd_sm.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

namespace iasim {

namespace {

// Runs fn(i) for i in [0, n) on `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn &&fn)
{
    if (workers <= 1 || n < 2)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            fn(i);
    };
    std::vector<std::thread> pool;
    const auto count = static_cast<std::size_t>(workers);
    for (std::size_t w = 1; w < std::min(count, n); ++w)
        pool.emplace_back(body);
    body();
    for (auto &t : pool)
        t.join();
}

struct IaDesign
{
    IaSolution sol;
    std::vector<int> bits;
    std::vector<double> powers;
};

struct SmDesign
{
    std::vector<SmSolution> sm;
    std::vector<std::vector<int>> bits;
    std::vector<std::vector<double>> powers;
};

IaDesign equal_power_ia(const ChannelGrid &est, const NetworkConfig &cfg, Mode mode, RngStream &init)
{
    IaDesign d;
    d.powers.assign(static_cast<std::size_t>(cfg.users), cfg.power);
    d.bits.assign(static_cast<std::size_t>(cfg.users), cfg.rate_per_pair);
    SolverOptions opts;
    opts.iterations = cfg.iterations;
    d.sol = mode == Mode::MinIL ? minil_solve(est, d.powers, opts, init) : maxsinr_solve(est, d.powers, opts, init);
    return d;
}

IaDesign from_allocation(IaSolution sol, const BitAllocation &a)
{
    IaDesign d;
    d.sol = std::move(sol);
    d.bits = a.bits;
    d.powers = a.channel_power;
    return d;
}

SmDesign svd_design(const ChannelSet &set, const NetworkConfig &cfg, bool loading,
                    std::vector<BitAllocation> *allocs = nullptr)
{
    SmDesign d;
    const int n = cfg.n_min();
    const int R = cfg.total_rate();
    for (int k = 0; k < cfg.users; ++k)
    {
        d.sm.push_back(svd_decompose(set.h_hat(k, k)));
        if (loading)
        {
            BitAllocation a = load_svd(d.sm.back(), cfg);
            d.bits.push_back(a.bits);
            d.powers.push_back(a.channel_power);
            if (allocs)
                allocs->push_back(std::move(a));
        }
        else
        {
            d.bits.emplace_back(static_cast<std::size_t>(n), R / n);
            d.powers.emplace_back(static_cast<std::size_t>(n), cfg.users * cfg.power / n);
        }
    }
    return d;
}

void transmit_ia(const IaDesign &d, const ChannelGrid &truth, const LinkSettings &s, std::uint64_t frame,
                 FrameResult &out)
{
    const int K = truth.users();
    const auto &cfg = s.net;
    auto data = RngStream::for_frame(cfg.seed, frame, Substream::Data);
    auto noise = RngStream::for_frame(cfg.seed, frame, Substream::Noise);

    std::vector<cd> coupling(static_cast<std::size_t>(K * K));
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
            coupling[k * K + l] = d.sol.u[k].dot(truth(k, l) * d.sol.v[l]);

    std::vector<ConstellationShape> shapes(static_cast<std::size_t>(K));
    std::vector<double> amp(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        amp[k] = std::sqrt(d.powers[k]);
        if (d.bits[k] > 0)
            shapes[k] = shape_for_bits(d.bits[k]);
    }

    std::vector<std::uint32_t> labels(static_cast<std::size_t>(K));
    std::vector<cd> tx(static_cast<std::size_t>(K));
    double energy = 0.0;
    for (int t = 0; t < s.channel_uses; ++t)
    {
        for (int l = 0; l < K; ++l)
        {
            if (d.bits[l] == 0)
            {
                tx[l] = 0.0;
                continue;
            }
            labels[l] = static_cast<std::uint32_t>(data() & ((1u << d.bits[l]) - 1u));
            tx[l] = amp[l] * modulate_label(labels[l], shapes[l]);
            energy += std::norm(tx[l]);
        }
        for (int k = 0; k < K; ++k)
        {
            if (d.bits[k] == 0)
                continue;
            cd r = noise.complex_gaussian();
            for (int l = 0; l < K; ++l)
                r += coupling[k * K + l] * tx[l];
            const std::uint32_t det = demodulate_label(r, coupling[k * K + k], amp[k], shapes[k]);
            out.bits[k] += static_cast<std::uint64_t>(d.bits[k]);
            out.errors[k] += static_cast<std::uint64_t>(std::popcount(det ^ labels[k]));
        }
    }
    out.energy_per_use = energy / s.channel_uses;
}

void transmit_sm(const SmDesign &d, const ChannelSet &set, const LinkSettings &s, std::uint64_t frame,
                 FrameResult &out)
{
    const int K = set.users();
    const auto &cfg = s.net;
    const int n = cfg.n_min();
    auto data = RngStream::for_frame(cfg.seed, frame, Substream::Data);
    auto noise = RngStream::for_frame(cfg.seed, frame, Substream::Noise);

    std::vector<CMat> eff;
    for (int k = 0; k < K; ++k)
        eff.push_back(sm_effective_matrix(d.sm[k], set.h(k, k)));

    std::vector<std::uint32_t> labels(static_cast<std::size_t>(n));
    std::vector<cd> tx(static_cast<std::size_t>(n));
    std::vector<ConstellationShape> shapes(static_cast<std::size_t>(n));
    double energy = 0.0;
    for (int t = 0; t < s.channel_uses; ++t)
    {
        const int k = t % K;
        const auto &bits = d.bits[k];
        const auto &pw = d.powers[k];
        for (int i = 0; i < n; ++i)
        {
            if (bits[i] == 0)
            {
                tx[i] = 0.0;
                continue;
            }
            shapes[i] = shape_for_bits(bits[i]);
            labels[i] = static_cast<std::uint32_t>(data() & ((1u << bits[i]) - 1u));
            tx[i] = std::sqrt(pw[i]) * modulate_label(labels[i], shapes[i]);
            energy += std::norm(tx[i]);
        }
        const CMat &g = eff[k];
        for (int i = 0; i < n; ++i)
        {
            if (bits[i] == 0)
                continue;
            cd r = noise.complex_gaussian();
            for (int j = 0; j < n; ++j)
                r += g(i, j) * tx[j];
            const std::uint32_t det = demodulate_label(r, g(i, i), std::sqrt(pw[i]), shapes[i]);
            out.bits[k] += static_cast<std::uint64_t>(bits[i]);
            out.errors[k] += static_cast<std::uint64_t>(std::popcount(det ^ labels[i]));
        }
    }
    out.energy_per_use = energy / s.channel_uses;
}

} // namespace

void LinkSettings::validate() const
{
    net.validate();
    if (channel_uses < 1)
        throw std::invalid_argument("channel_uses: must be >= 1");

    const int R = net.total_rate();
    const bool uses_ia = mode != Mode::SvdSm;
    const bool uses_sm = mode == Mode::SvdSm || mode == Mode::Adaptive;
    if (mode == Mode::Adaptive && !bit_loading)
        throw std::invalid_argument("mode: Adaptive selects among bit-loaded modes and requires loading");
    if (uses_ia && !net.ia_proper())
        throw std::invalid_argument("mode " + std::string(mode_name(mode)) + ": IA properness count fails, nt + nr = " +
                                    std::to_string(net.nt + net.nr) + " < K + 1 = " + std::to_string(net.users + 1));
    if (uses_ia)
    {
        if (!bit_loading && net.rate_per_pair > kMaxBitsPerSymbol)
            throw std::invalid_argument("rate_per_pair: more than 6 bits per symbol is not supported");
        if (bit_loading && R > kMaxBitsPerSymbol * net.users)
            throw std::invalid_argument("rate_per_pair: total rate exceeds 6 bits on every pair");
    }
    if (uses_sm)
    {
        const int n = net.n_min();
        if (!bit_loading)
        {
            if (R % n != 0)
                throw std::invalid_argument("rate_per_pair: SVD-SM needs K * rate_per_pair = " + std::to_string(R) +
                                            " divisible by n_min = " + std::to_string(n));
            if (R / n > kMaxBitsPerSymbol)
                throw std::invalid_argument("rate_per_pair: SVD-SM would need more than 6 bits per stream");
        }
        else if (R > kMaxBitsPerSymbol * n)
        {
            throw std::invalid_argument("rate_per_pair: SVD-SM loading needs more than 6 bits per eigenmode");
        }
    }
}

std::uint64_t FrameResult::total_bits() const
{
    std::uint64_t s = 0;
    for (auto b : bits)
        s += b;
    return s;
}

std::uint64_t FrameResult::total_errors() const
{
    std::uint64_t s = 0;
    for (auto e : errors)
        s += e;
    return s;
}

FrameResult run_frame(const LinkSettings &s, std::uint64_t frame_index)
{
    const NetworkConfig &cfg = s.net;
    auto channel_stream = RngStream::for_frame(cfg.seed, frame_index, Substream::Channel);
    const ChannelSet set = sample_channel_set(cfg, channel_stream);
    const ChannelGrid est(set, ChannelGrid::View::Estimate);
    const ChannelGrid truth(set, ChannelGrid::View::True);

    FrameResult out;
    out.bits.assign(static_cast<std::size_t>(cfg.users), 0);
    out.errors.assign(static_cast<std::size_t>(cfg.users), 0);
    out.used = s.mode;

    switch (s.mode)
    {
    case Mode::MinIL:
    case Mode::MaxSinr: {
        auto init = RngStream::for_frame(cfg.seed, frame_index,
                                         s.mode == Mode::MinIL ? Substream::MinIlInit : Substream::MaxSinrInit);
        IaDesign d = equal_power_ia(est, cfg, s.mode, init);
        if (s.bit_loading)
        {
            if (s.mode == Mode::MinIL)
            {
                const BitAllocation a = load_minil(d.sol, cfg);
                out.predicted_ber = a.predicted_ber;
                d = from_allocation(std::move(d.sol), a);
            }
            else
            {
                MaxSinrLoading l = load_maxsinr(est, cfg, d.sol, init);
                out.predicted_ber = l.allocation.predicted_ber;
                d = from_allocation(std::move(l.solution), l.allocation);
            }
        }
        transmit_ia(d, truth, s, frame_index, out);
        break;
    }
    case Mode::SvdSm: {
        std::vector<BitAllocation> allocs;
        const SmDesign d = svd_design(set, cfg, s.bit_loading, &allocs);
        if (s.bit_loading)
            out.predicted_ber = svd_mode_ber(allocs);
        transmit_sm(d, set, s, frame_index, out);
        break;
    }
    case Mode::Adaptive: {
        auto minil_init = RngStream::for_frame(cfg.seed, frame_index, Substream::MinIlInit);
        IaDesign minil = equal_power_ia(est, cfg, Mode::MinIL, minil_init);
        const BitAllocation minil_alloc = load_minil(minil.sol, cfg);
        auto maxsinr_init = RngStream::for_frame(cfg.seed, frame_index, Substream::MaxSinrInit);
        IaDesign maxsinr = equal_power_ia(est, cfg, Mode::MaxSinr, maxsinr_init);
        MaxSinrLoading maxsinr_load = load_maxsinr(est, cfg, maxsinr.sol, maxsinr_init);
        std::vector<BitAllocation> svd_allocs;
        const SmDesign sm = svd_design(set, cfg, true, &svd_allocs);

        const ModeDecision decision = select_mode(minil_alloc, maxsinr_load.allocation, svd_allocs);
        out.used = decision.mode;
        out.predicted_ber = decision.predicted_ber;
        if (decision.mode == Mode::MinIL)
            transmit_ia(from_allocation(std::move(minil.sol), minil_alloc), truth, s, frame_index, out);
        else if (decision.mode == Mode::MaxSinr)
            transmit_ia(from_allocation(std::move(maxsinr_load.solution), maxsinr_load.allocation), truth, s,
                        frame_index, out);
        else
            transmit_sm(sm, set, s, frame_index, out);
        break;
    }
    }
    return out;
}

RunSummary estimate_ber(const LinkSettings &s, const StopRule &stop)
{
    s.validate();
    const int workers = std::max(1, stop.workers);
    const std::size_t batch = workers == 1 ? 1 : static_cast<std::size_t>(16 * workers);

    BerAccumulator acc;
    RunSummary summary;
    double energy = 0.0;
    std::uint64_t next = 0;
    std::vector<FrameResult> results(batch);
    bool done = false;
    while (!done)
    {
        parallel_for(batch, workers, [&](std::size_t i) { results[i] = run_frame(s, next + i); });
        for (std::size_t i = 0; i < batch && !done; ++i)
        {
            const FrameResult &r = results[i];
            acc.add_frame(r.total_bits(), r.total_errors());
            energy += r.energy_per_use;
            if (r.used != Mode::Adaptive)
                ++summary.mode_counts[static_cast<std::size_t>(r.used)];
            const bool enough_errors = acc.errors() >= stop.target_errors && acc.frames() >= stop.min_frames;
            const bool out_of_bits = acc.bits() >= stop.max_bits;
            const bool out_of_frames = stop.max_frames > 0 && acc.frames() >= stop.max_frames;
            done = enough_errors || out_of_bits || out_of_frames;
        }
        next += batch;
    }
    summary.ber = acc.estimate();
    summary.mean_energy_per_use = energy / static_cast<double>(acc.frames());
    return summary;
}

std::optional<double> analytic_ber(const LinkSettings &s)
{
    if (s.bit_loading)
        return std::nullopt;
    const auto &n = s.net;
    if (s.mode == Mode::MinIL)
        return minil_avg_ber(shape_for_bits(n.rate_per_pair), n.power, n.epsilon, n.users);
    if (s.mode == Mode::SvdSm && n.epsilon < 1.0 && n.total_rate() % n.n_min() == 0)
        return svd_avg_ber(shape_for_bits(n.total_rate() / n.n_min()), n.users * n.power, n.n_min(), n.n_max(),
                           n.epsilon);
    return std::nullopt;
}

std::vector<Fig1Row> fig1_stats(const NetworkConfig &cfg, const std::vector<double> &powers, int frames, int workers)
{
    cfg.validate();
    if (frames < 1)
        throw std::invalid_argument("fig1_stats: frames must be >= 1");

    std::vector<Fig1Row> rows;
    const int K = cfg.users;
    for (double p : powers)
    {
        NetworkConfig c = cfg;
        c.power = p;
        struct Acc
        {
            double zmax = 0, leak = 0, zmin = 0, bf = 0;
        };
        std::vector<Acc> per_frame(static_cast<std::size_t>(frames));
        parallel_for(per_frame.size(), workers, [&](std::size_t f) {
            auto chs = RngStream::for_frame(c.seed, f, Substream::Channel);
            const ChannelSet set = sample_channel_set(c, chs);
            const ChannelGrid est(set, ChannelGrid::View::Estimate);
            const std::vector<double> pw(static_cast<std::size_t>(K), p);
            SolverOptions opts;
            opts.iterations = c.iterations;
            auto init_max = RngStream::for_frame(c.seed, f, Substream::MaxSinrInit);
            const IaSolution ms = maxsinr_solve(est, pw, opts, init_max);
            auto init_min = RngStream::for_frame(c.seed, f, Substream::MinIlInit);
            const IaSolution mi = minil_solve(est, pw, opts, init_min);
            Acc a;
            for (int k = 0; k < K; ++k)
            {
                a.zmax += std::norm(ms.z[k]);
                a.leak += ms.leakage[k];
                a.zmin += std::norm(mi.z[k]);
                const double smax = svd_decompose(set.h_hat(k, k)).s(0);
                a.bf += smax * smax;
            }
            per_frame[f] = a;
        });
        Fig1Row row;
        row.power = p;
        for (const auto &a : per_frame)
        {
            row.maxsinr_signal += a.zmax;
            row.maxsinr_leakage += a.leak;
            row.minil_signal += a.zmin;
            row.beamforming_signal += a.bf;
        }
        const double n = static_cast<double>(frames) * K;
        row.maxsinr_signal /= n;
        row.maxsinr_leakage /= n;
        row.minil_signal /= n;
        row.beamforming_signal /= n;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> sweep(const SweepSpec &spec)
{
    if (spec.snr_db.empty() || spec.epsilon.empty() || spec.modes.empty() || spec.loading.empty())
        throw std::invalid_argument("sweep: every grid must be nonempty");

    std::vector<SweepRow> rows;
    for (double eps : spec.epsilon)
        for (bool loading : spec.loading)
            for (Mode mode : spec.modes)
            {
                if (mode == Mode::Adaptive && !loading)
                    continue;
                for (double snr : spec.snr_db)
                {
                    LinkSettings s;
                    s.net = spec.base;
                    s.net.epsilon = eps;
                    s.net.power = db_to_linear(snr);
                    s.mode = mode;
                    s.bit_loading = loading;
                    s.channel_uses = spec.channel_uses;

                    SweepRow row;
                    row.experiment = spec.experiment;
                    row.mode = mode;
                    row.loading = loading;
                    row.users = s.net.users;
                    row.nt = s.net.nt;
                    row.nr = s.net.nr;
                    row.snr_db = snr;
                    row.epsilon = eps;
                    row.run = estimate_ber(s, spec.stop);
                    row.analytic = analytic_ber(s);
                    rows.push_back(std::move(row));
                }
            }
    return rows;
}

} // namespace iasim
