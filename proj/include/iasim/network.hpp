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
#ifndef IASIM_NETWORK_HPP
#define IASIM_NETWORK_HPP

#include "iasim/rng.hpp"
#include "iasim/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace iasim {

/// Parameterization of a K-user nt x nr interference network experiment.
struct NetworkConfig
{
    int users = 3;          // K
    int nt = 2;             // transmit antennas per node
    int nr = 2;             // receive antennas per node
    double power = 100.0;   // per-transmitter power P (linear, noise variance 1)
    int rate_per_pair = 2;  // bits per channel use per pair under IA
    double epsilon = 0.0;   // CSIT uncertainty in [0, 1]
    int iterations = 100;   // IA solver iterations
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    int total_rate() const { return users * rate_per_pair; }
    int n_min() const { return nt < nr ? nt : nr; }
    int n_max() const { return nt < nr ? nr : nt; }

    /// Single-stream IA counting condition nt + nr >= K + 1.
    bool ia_proper() const { return nt + nr >= users + 1; }
};

/// Channel realization of one frame: h = sqrt(1 - eps) h_hat + sqrt(eps) w.
///
/// Transmitters only see h_hat; receivers see h.
class ChannelSet
{
  public:
    ChannelSet(int users, int nr, int nt, double epsilon);

    int users() const { return users_; }
    int nr() const { return nr_; }
    int nt() const { return nt_; }
    double epsilon() const { return epsilon_; }

    // (k, l): transmitter l -> receiver k.
    const CMat &h(int k, int l) const { return h_[index(k, l)]; }
    const CMat &h_hat(int k, int l) const { return h_hat_[index(k, l)]; }
    const CMat &w(int k, int l) const { return w_[index(k, l)]; }

    CMat &h_hat(int k, int l) { return h_hat_[index(k, l)]; }

    /// Channels from every transmitter into receiver k.
    std::span<const CMat> h_row(int k) const { return {h_.data() + index(k, 0), static_cast<std::size_t>(users_)}; }
    std::span<const CMat> h_hat_row(int k) const
    {
        return {h_hat_.data() + index(k, 0), static_cast<std::size_t>(users_)};
    }
    CMat &w(int k, int l) { return w_[index(k, l)]; }

    /// Recomposes h from h_hat and w.
    void compose();

  private:
    std::size_t index(int k, int l) const { return static_cast<std::size_t>(k * users_ + l); }

    int users_, nr_, nt_;
    double epsilon_;
    std::vector<CMat> h_hat_, w_, h_;
};

/// Grid of K x K channels seen by a designer (either the estimates or the
/// true channels of a ChannelSet).
class ChannelGrid
{
  public:
    enum class View { Estimate, True };

    ChannelGrid(const ChannelSet &set, View view) : set_(&set), view_(view) {}

    int users() const { return set_->users(); }
    int nr() const { return set_->nr(); }
    int nt() const { return set_->nt(); }
    const CMat &operator()(int k, int l) const
    {
        return view_ == View::True ? set_->h(k, l) : set_->h_hat(k, l);
    }
    std::span<const CMat> row(int k) const { return view_ == View::True ? set_->h_row(k) : set_->h_hat_row(k); }

  private:
    const ChannelSet *set_;
    View view_;
};

/// Draws h_hat and w with i.i.d. CN(0, 1) entries and composes h.
ChannelSet sample_channel_set(const NetworkConfig &cfg, RngStream &stream);

struct CsiErrorStats
{
    double power_h = 0.0;
    double power_h_hat = 0.0;
    double power_w = 0.0;
    double correlation = 0.0;  // Re E[h conj(h_hat)] / sqrt(E|h|^2 E|h_hat|^2)
    std::size_t entries = 0;
};

/// Empirical per-entry moments over a set of frames. Throws on empty input.
CsiErrorStats csi_error_stats(std::span<const ChannelSet> sets);

/// Textual dump, one line per entry: `k l i j re im` (h_hat block, then w,
/// then h, each prefixed by a section tag line).
void write_frame_dump(std::ostream &os, const ChannelSet &set);

} // namespace iasim

#endif
