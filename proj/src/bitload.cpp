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
#include "iasim/bitload.hpp"

#include "iasim/ber_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace iasim {

namespace {

constexpr double kTieTol = 1e-12;

double checked(double value, int channel, int bits)
{
    if (!std::isfinite(value))
        throw std::domain_error("bit loading: BER oracle returned a non-finite value for channel " +
                                std::to_string(channel) + " at " + std::to_string(bits) + " bits");
    return value;
}

BitAllocation finish(const BerOracle &ber_of, std::vector<int> bits, int rate, double total_power)
{
    BitAllocation out;
    out.rate = rate;
    out.total_power = total_power;
    out.channel_power.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        out.channel_power[i] = total_power / rate * bits[i];
    out.bits = std::move(bits);
    out.predicted_ber = weighted_ber(ber_of, out.bits, rate);
    return out;
}

} // namespace

double weighted_ber(const BerOracle &ber_of, std::span<const int> bits, int rate)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] > 0)
            sum += checked(ber_of(static_cast<int>(i), bits[i]), static_cast<int>(i), bits[i]) * bits[i];
    return sum / rate;
}

BitAllocation greedy_bitload(const BerOracle &ber_of, int n_channels, int rate, double total_power,
                             GreedyTrace *trace)
{
    if (rate < 1)
        throw std::invalid_argument("greedy_bitload: rate must be >= 1");
    if (n_channels < 1)
        throw std::invalid_argument("greedy_bitload: need at least one channel");
    const int cap = std::min(rate, kMaxBitsPerSymbol);
    if (rate > cap * n_channels)
        throw std::invalid_argument("greedy_bitload: rate " + std::to_string(rate) + " exceeds " +
                                    std::to_string(n_channels) + " channels of at most " +
                                    std::to_string(kMaxBitsPerSymbol) + " bits");

    std::vector<int> bits(static_cast<std::size_t>(n_channels), 0);
    std::vector<double> contribution(static_cast<std::size_t>(n_channels), 0.0);
    for (int step = 0; step < rate; ++step)
    {
        int best = -1;
        double best_obj = std::numeric_limits<double>::infinity();
        std::vector<double> cand;
        if (trace)
            cand.assign(static_cast<std::size_t>(n_channels), std::numeric_limits<double>::quiet_NaN());

        for (int i = 0; i < n_channels; ++i)
        {
            if (bits[i] >= cap)
                continue;
            const int b = bits[i] + 1;
            const double trial = checked(ber_of(i, b), i, b) * b;
            double sum = 0.0;
            for (int j = 0; j < n_channels; ++j)
                sum += (j == i) ? trial : contribution[j];
            const double obj = sum / rate;
            if (trace)
                cand[i] = obj;
            if (best < 0 || obj < best_obj - kTieTol * std::abs(best_obj))
            {
                best = i;
                best_obj = obj;
            }
        }
        ++bits[best];
        contribution[best] = ber_of(best, bits[best]) * bits[best];
        if (trace)
        {
            trace->candidates.push_back(std::move(cand));
            trace->chosen.push_back(best);
        }
    }
    return finish(ber_of, std::move(bits), rate, total_power);
}

BitAllocation load_minil(const IaSolution &sol, const NetworkConfig &cfg)
{
    const int R = cfg.total_rate();
    const double per_bit = cfg.users * cfg.power / R;
    auto oracle = [&](int i, int b) {
        return ber_awgn_instant(shape_for_bits(b), std::norm(sol.z[i]) * per_bit * b);
    };
    return greedy_bitload(oracle, sol.users(), R, cfg.users * cfg.power);
}

MaxSinrLoading load_maxsinr(const ChannelGrid &channels, const NetworkConfig &cfg, RngStream &stream)
{
    const std::vector<double> equal(static_cast<std::size_t>(cfg.users), cfg.power);
    SolverOptions opts;
    opts.iterations = cfg.iterations;
    const IaSolution initial = maxsinr_solve(channels, equal, opts, stream);
    return load_maxsinr(channels, cfg, initial, stream);
}

MaxSinrLoading load_maxsinr(const ChannelGrid &channels, const NetworkConfig &cfg, const IaSolution &initial,
                            RngStream &stream)
{
    const int R = cfg.total_rate();
    const double per_bit = cfg.users * cfg.power / R;
    auto scaled = [&](int i, int b) {
        return maxsinr_predicted_ber(shape_for_bits(b), initial.sinr[i] * per_bit * b / cfg.power);
    };

    MaxSinrLoading out;
    out.allocation = greedy_bitload(scaled, initial.users(), R, cfg.users * cfg.power);
    out.predicted_ber_initial = out.allocation.predicted_ber;

    SolverOptions opts;
    opts.iterations = cfg.iterations;
    out.solution = maxsinr_solve(channels, out.allocation.channel_power, opts, stream);

    auto redesigned = [&](int i, int b) {
        return maxsinr_predicted_ber(shape_for_bits(b), out.solution.sinr[i]);
    };
    out.allocation.predicted_ber = weighted_ber(redesigned, out.allocation.bits, R);
    return out;
}

BitAllocation load_svd(const SmSolution &sol, const NetworkConfig &cfg)
{
    const int R = cfg.total_rate();
    const double per_bit = cfg.users * cfg.power / R;
    auto oracle = [&](int i, int b) {
        const double g = sol.s(i);
        return ber_awgn_instant(shape_for_bits(b), g * g * per_bit * b);
    };
    return greedy_bitload(oracle, sol.n_min, R, cfg.users * cfg.power);
}

double svd_mode_ber(std::span<const BitAllocation> per_pair)
{
    if (per_pair.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto &a : per_pair)
        sum += a.predicted_ber;
    return sum / static_cast<double>(per_pair.size());
}

ModeDecision select_mode(const BitAllocation &minil, const BitAllocation &maxsinr,
                         std::span<const BitAllocation> svd_per_pair)
{
    const double p_max = maxsinr.predicted_ber;
    const double p_svd = svd_mode_ber(svd_per_pair);
    const double p_min = minil.predicted_ber;

    ModeDecision d;
    d.mode = Mode::MaxSinr;
    d.predicted_ber = p_max;
    if (p_svd < d.predicted_ber)
    {
        d.mode = Mode::SvdSm;
        d.predicted_ber = p_svd;
    }
    if (p_min < d.predicted_ber)
    {
        d.mode = Mode::MinIL;
        d.predicted_ber = p_min;
    }
    switch (d.mode)
    {
    case Mode::MaxSinr: d.allocations = {maxsinr}; break;
    case Mode::MinIL: d.allocations = {minil}; break;
    default: d.allocations.assign(svd_per_pair.begin(), svd_per_pair.end()); break;
    }
    return d;
}

void write_allocation_audit(std::ostream &os, std::uint64_t frame, const ModeDecision &d)
{
    os << frame << ',' << mode_name(d.mode) << ',';
    for (std::size_t p = 0; p < d.allocations.size(); ++p)
    {
        if (p > 0)
            os << '|';
        const auto &bits = d.allocations[p].bits;
        for (std::size_t i = 0; i < bits.size(); ++i)
            os << (i > 0 ? ";" : "") << bits[i];
    }
    os << ',' << d.predicted_ber << '\n';
}

} // namespace iasim
