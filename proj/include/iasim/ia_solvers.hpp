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
#ifndef IASIM_IA_SOLVERS_HPP
#define IASIM_IA_SOLVERS_HPP

#include "iasim/network.hpp"
#include "iasim/rng.hpp"
#include "iasim/types.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace iasim {

/// Single-stream transceivers of all K pairs plus the metrics they induce
/// on the channels the solver was given.
struct IaSolution
{
    std::vector<CVec> v;          // unit-norm precoders (nt)
    std::vector<CVec> u;          // unit-norm combiners (nr)
    std::vector<cd> z;            // u_k^H H_kk v_k
    std::vector<double> leakage;  // sum_{l != k} p_l |u_k^H H_kl v_l|^2
    std::vector<double> sinr;     // p_k |z_k|^2 / (1 + leakage_k)
    std::vector<double> power;    // per-stream power p_k

    int users() const { return static_cast<int>(v.size()); }
    double total_leakage() const;
};

struct SolverOptions
{
    int iterations = 100;
    /// Stop once total leakage < threshold * K * max(p). Zero disables.
    double early_stop = 0.0;
    /// When set, receives the total leakage after every iteration.
    std::vector<double> *leakage_trace = nullptr;
    /// Warm start for the precoders; random unit vectors otherwise.
    const std::vector<CVec> *initial_precoders = nullptr;
};

/// Interference power seen by receiver k through combiner u.
/// `h_row[l]` is the channel from transmitter l into receiver k.
double interference_leakage(int k, const CVec &u, std::span<const CVec> v_all,
                            std::span<const CMat> h_row, std::span<const double> powers);

/// Leakage-minimizing alternating algorithm.
///
/// Each iteration sets u_k to the minimum eigenvector of the interference
/// covariance at receiver k, then v_k to the minimum eigenvector of the
/// reciprocal-network covariance sum_{l != k} p_l H_lk^H u_l u_l^H H_lk.
/// A final forward pass makes the combiners optimal for the returned
/// precoders. Direct channels H_kk never enter the design.
///
/// The alignment conditions are invariant to a common power scale; with
/// unequal powers the reciprocal step weights by the reciprocal transmitter.
IaSolution minil_solve(const ChannelGrid &channels, std::span<const double> powers,
                       const SolverOptions &opts, RngStream &stream);

/// Per-link SINR maximizing alternating algorithm.
///
/// u_k = normalize(B_k^{-1} H_kk v_k), B_k = I + sum_{l != k} p_l H_kl v_l v_l^H H_kl^H,
/// and the reciprocal update for v_k. Ends with a forward pass, so every
/// returned u_k maximizes its pair's SINR given the returned precoders.
IaSolution maxsinr_solve(const ChannelGrid &channels, std::span<const double> powers,
                         const SolverOptions &opts, RngStream &stream);

/// Recomputes z, leakage and sinr of `sol` on `channels` with `powers`.
void evaluate_metrics(IaSolution &sol, const ChannelGrid &channels, std::span<const double> powers);

/// Post-processing SINR of each pair when the transceivers designed on one
/// set of channels operate over `true_channels`.
std::vector<double> evaluate_true_sinr(const IaSolution &sol, const ChannelGrid &true_channels,
                                       std::span<const double> powers, double noise_power = 1.0);

/// Interference power (the SINR denominator minus noise) under `true_channels`.
std::vector<double> evaluate_true_interference(const IaSolution &sol, const ChannelGrid &true_channels,
                                               std::span<const double> powers);

/// Textual dump in the frame-dump layout: `# v` lines `k i re im`, then
/// `# u` lines the same way.
void write_solution_dump(std::ostream &os, const IaSolution &sol);

} // namespace iasim

#endif
