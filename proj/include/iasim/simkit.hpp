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
#ifndef IASIM_SIMKIT_HPP
#define IASIM_SIMKIT_HPP

#include "iasim/bitload.hpp"
#include "iasim/modem.hpp"
#include "iasim/network.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iasim {

/// Everything needed to simulate one transmission mode.
struct LinkSettings
{
    NetworkConfig net;
    Mode mode = Mode::MinIL;
    bool bit_loading = false;
    int channel_uses = 100;  // symbols per stream per frame

    /// Throws std::invalid_argument when the mode cannot run on `net`
    /// (rate not divisible over eigenmodes, constellation too large, ...).
    void validate() const;
};

struct FrameResult
{
    std::vector<std::uint64_t> bits;    // per pair
    std::vector<std::uint64_t> errors;  // per pair
    Mode used = Mode::MinIL;            // mode actually transmitted (Adaptive resolves per frame)
    double energy_per_use = 0.0;        // sum of transmitted symbol energies / channel uses
    double predicted_ber = 0.0;         // loaded modes only

    std::uint64_t total_bits() const;
    std::uint64_t total_errors() const;
};

/// Simulates frame `frame_index`: samples channels, designs transceivers
/// (and bit allocations) from the estimates, and sends random data through
/// the true channels with unit-variance complex AWGN. Receivers combine
/// with the designed u_k, equalize with the true effective scalar and
/// slice; residual interference is carried in the received samples.
FrameResult run_frame(const LinkSettings &s, std::uint64_t frame_index);

struct StopRule
{
    std::uint64_t target_errors = 1000;
    std::uint64_t max_bits = 100'000'000;
    std::uint64_t min_frames = 0;
    std::uint64_t max_frames = 0;  // zero: unbounded
    int workers = 1;
};

struct RunSummary
{
    BerEstimate ber;
    std::array<std::uint64_t, 3> mode_counts{};  // frames transmitted as MinIL, Max-SINR, SVD-SM
    double mean_energy_per_use = 0.0;
};

/// Runs frames 0, 1, 2, ... until the error target (with at least
/// min_frames) or the bit budget is reached. The frames consumed are the
/// same for any worker count.
RunSummary estimate_ber(const LinkSettings &s, const StopRule &stop);

/// Sets the SNR (P in dB; noise variance is 1).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Closed-form BER for the non-loaded modes that have one.
std::optional<double> analytic_ber(const LinkSettings &s);

struct Fig1Row
{
    double power = 0.0;
    double maxsinr_signal = 0.0;      // average |z^M|^2
    double maxsinr_leakage = 0.0;     // average L_k
    double minil_signal = 0.0;        // average |z|^2 under MinIL (analytically 1)
    double beamforming_signal = 0.0;  // E[sigma_max^2] of H_kk
};

/// Desired-signal and residual-interference averages of Max-SINR against
/// the MinIL and dominant-eigenmode references.
std::vector<Fig1Row> fig1_stats(const NetworkConfig &cfg, const std::vector<double> &powers, int frames,
                                int workers = 1);

struct SweepRow
{
    std::string experiment;
    Mode mode = Mode::MinIL;
    bool loading = false;
    int users = 0, nt = 0, nr = 0;
    double snr_db = 0.0;
    double epsilon = 0.0;
    RunSummary run;
    std::optional<double> analytic;
};

struct SweepSpec
{
    std::string experiment = "custom";
    NetworkConfig base;
    std::vector<double> snr_db;
    std::vector<double> epsilon;
    std::vector<Mode> modes;
    std::vector<bool> loading;
    int channel_uses = 100;
    StopRule stop;
};

/// Cross product of the grids. Throws when any grid is empty.
std::vector<SweepRow> sweep(const SweepSpec &spec);

} // namespace iasim

#endif
