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
#ifndef IASIM_BITLOAD_HPP
#define IASIM_BITLOAD_HPP

#include "iasim/ia_solvers.hpp"
#include "iasim/modem.hpp"
#include "iasim/network.hpp"
#include "iasim/svd_sm.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace iasim {

/// Integer bit allocation over equivalent channels with power total/R per bit.
struct BitAllocation
{
    std::vector<int> bits;
    std::vector<double> channel_power;
    int rate = 0;
    double total_power = 0.0;
    /// (1/R) sum_i P_b(i, bits_i) bits_i
    double predicted_ber = 0.0;

    int channels() const { return static_cast<int>(bits.size()); }
    /// Constellation of channel i; only meaningful when bits[i] > 0.
    ConstellationShape shape(int i) const { return shape_for_bits(bits[i]); }
};

/// Per-channel BER P_b(i, b) of channel i carrying b >= 1 bits.
using BerOracle = std::function<double(int channel, int bits)>;

/// Candidate objectives evaluated at every greedy step.
struct GreedyTrace
{
    std::vector<std::vector<double>> candidates;  // per step, per channel (NaN when not admissible)
    std::vector<int> chosen;
};

/// Weighted objective (1/R) sum_i P_b(i, b_i) b_i of a given allocation.
double weighted_ber(const BerOracle &ber_of, std::span<const int> bits, int rate);

/// Greedy bit loading: starting from zero bits everywhere, add one bit at a
/// time to the channel whose addition minimizes the weighted objective,
/// until R bits are placed. Channels hold at most min(R, 6) bits. Ties
/// (relative difference below 1e-12) go to the lowest channel index.
BitAllocation greedy_bitload(const BerOracle &ber_of, int n_channels, int rate, double total_power,
                             GreedyTrace *trace = nullptr);

/// Loading over MinIL equivalent channels |z_i| with budget K R_IA bits and
/// power K P; transceivers are left unchanged.
BitAllocation load_minil(const IaSolution &sol, const NetworkConfig &cfg);

struct MaxSinrLoading
{
    BitAllocation allocation;
    IaSolution solution;                // re-designed under the loaded powers
    double predicted_ber_initial = 0.0; // objective before the re-design
};

/// Max-SINR design at equal powers, greedy loading on the SINRs scaled to
/// each candidate power, then exactly one re-design at the loaded powers
/// and re-evaluation of the objective. Both solver runs draw their random
/// initial precoders from `stream`.
MaxSinrLoading load_maxsinr(const ChannelGrid &channels, const NetworkConfig &cfg, RngStream &stream);

/// Same as above, reusing an equal-power design already drawn from `stream`.
MaxSinrLoading load_maxsinr(const ChannelGrid &channels, const NetworkConfig &cfg, const IaSolution &initial,
                            RngStream &stream);

/// Loading over the n_min eigen-channels of the active pair, budget
/// K R_IA bits and power K P.
BitAllocation load_svd(const SmSolution &sol, const NetworkConfig &cfg);

/// Mode picked for a whole frame.
struct ModeDecision
{
    Mode mode = Mode::MaxSinr;
    double predicted_ber = 0.0;
    /// One allocation per pair for SVD-SM, a single K-channel one otherwise.
    std::vector<BitAllocation> allocations;
};

/// Predicted BER of SVD-SM over a frame: pairs share the channel uses
/// equally, so it is the mean of the per-pair objectives.
double svd_mode_ber(std::span<const BitAllocation> per_pair);

/// Lowest predicted BER wins; ties resolve Max-SINR, then SVD-SM, then MinIL.
ModeDecision select_mode(const BitAllocation &minil, const BitAllocation &maxsinr,
                         std::span<const BitAllocation> svd_per_pair);

/// Allocation audit line `frame,mode,bits,predicted_ber`; bits are joined
/// by ';' within a pair and by '|' between SVD-SM pairs.
void write_allocation_audit(std::ostream &os, std::uint64_t frame, const ModeDecision &d);

} // namespace iasim

#endif
