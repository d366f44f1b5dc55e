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
#ifndef IASIM_MODEM_HPP
#define IASIM_MODEM_HPP

#include "iasim/types.hpp"

#include <cstdint>
#include <span>

namespace iasim {

/// Unit-average-energy Gray-coded I x J rectangular QAM.
///
/// The first ceil(b/2) bits of a label select the in-phase level, the
/// remaining floor(b/2) bits the quadrature level. Each axis is binary
/// reflected Gray coded PAM with spacing 2d, d = sqrt(3 / (I^2 + J^2 - 2)).
struct ConstellationShape
{
    int i_side = 2;
    int j_side = 1;

    int i_bits() const;
    int j_bits() const;
    int bits() const { return i_bits() + j_bits(); }
    int size() const { return i_side * j_side; }
    /// Half the distance between neighbouring levels on either axis.
    double half_spacing() const;

    friend bool operator==(const ConstellationShape &, const ConstellationShape &) = default;
};

inline constexpr int kMaxBitsPerSymbol = 6;

/// Squarest rectangle: I = 2^ceil(b/2), J = 2^floor(b/2).
/// Throws for b < 1 or b > kMaxBitsPerSymbol.
ConstellationShape shape_for_bits(int b);

/// Symbol for a label whose MSB is the first bit.
cd modulate_label(std::uint32_t label, const ConstellationShape &shape);

/// Nearest-neighbour detection after equalizing y / (gain * amplitude).
/// A zero gain marks the stream dead and yields label 0.
std::uint32_t demodulate_label(cd y, cd gain, double amplitude, const ConstellationShape &shape);

/// Bit-vector forms of the above; `bits` holds shape.bits() entries of 0/1.
cd modulate(std::span<const std::uint8_t> bits, const ConstellationShape &shape);
void demodulate(cd y, cd gain, double amplitude, const ConstellationShape &shape, std::span<std::uint8_t> bits);

/// Bit-error count and its uncertainty.
struct BerEstimate
{
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frames = 0;
    double estimate = 0.0;
    /// Binomial normal-approximation 95% half-width (rule of three when
    /// no errors were seen, in which case `one_sided` is set).
    double ci95 = 0.0;
    /// Standard error from the frame-to-frame spread of error counts. Block
    /// fading makes errors cluster within frames, so this is the figure to
    /// use when comparing against references.
    double se = 0.0;
    bool one_sided = false;
};

/// Running per-frame accumulator behind BerEstimate.
class BerAccumulator
{
  public:
    void add_frame(std::uint64_t bits, std::uint64_t errors);
    void merge(const BerAccumulator &other);

    std::uint64_t bits() const { return bits_; }
    std::uint64_t errors() const { return errors_; }
    std::uint64_t frames() const { return frames_; }

    BerEstimate estimate() const;

  private:
    std::uint64_t bits_ = 0, errors_ = 0, frames_ = 0;
    double s_ee_ = 0.0, s_en_ = 0.0, s_nn_ = 0.0;
};

} // namespace iasim

#endif
