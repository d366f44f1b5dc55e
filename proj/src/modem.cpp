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
#include "iasim/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iasim {

namespace {

int log2_exact(int n)
{
    int b = 0;
    while ((1 << b) < n)
        ++b;
    return b;
}

double pam_level(std::uint32_t gray, int levels, double d)
{
    std::uint32_t idx = gray;
    for (std::uint32_t s = gray >> 1; s != 0; s >>= 1)
        idx ^= s;
    return (2.0 * idx - (levels - 1)) * d;
}

std::uint32_t pam_slice(double x, int levels, double d)
{
    const double pos = std::round((x / d + (levels - 1)) * 0.5);
    const auto idx = static_cast<std::uint32_t>(std::clamp(pos, 0.0, static_cast<double>(levels - 1)));
    return idx ^ (idx >> 1);
}

} // namespace

int ConstellationShape::i_bits() const { return log2_exact(i_side); }
int ConstellationShape::j_bits() const { return log2_exact(j_side); }

double ConstellationShape::half_spacing() const
{
    return std::sqrt(3.0 / (i_side * i_side + j_side * j_side - 2.0));
}

ConstellationShape shape_for_bits(int b)
{
    if (b < 1 || b > kMaxBitsPerSymbol)
        throw std::invalid_argument("shape_for_bits: bits per symbol must be in [1, " +
                                    std::to_string(kMaxBitsPerSymbol) + "], got " + std::to_string(b));
    return ConstellationShape{1 << ((b + 1) / 2), 1 << (b / 2)};
}

cd modulate_label(std::uint32_t label, const ConstellationShape &shape)
{
    const int jb = shape.j_bits();
    const double d = shape.half_spacing();
    const std::uint32_t gi = label >> jb;
    const std::uint32_t gj = label & ((1u << jb) - 1u);
    const double re = pam_level(gi, shape.i_side, d);
    const double im = shape.j_side > 1 ? pam_level(gj, shape.j_side, d) : 0.0;
    return {re, im};
}

std::uint32_t demodulate_label(cd y, cd gain, double amplitude, const ConstellationShape &shape)
{
    if (gain == cd(0.0) || !(amplitude > 0.0))
        return 0;
    const cd x = y / (gain * amplitude);
    const double d = shape.half_spacing();
    const std::uint32_t gi = pam_slice(x.real(), shape.i_side, d);
    const std::uint32_t gj = shape.j_side > 1 ? pam_slice(x.imag(), shape.j_side, d) : 0u;
    return (gi << shape.j_bits()) | gj;
}

cd modulate(std::span<const std::uint8_t> bits, const ConstellationShape &shape)
{
    if (static_cast<int>(bits.size()) != shape.bits())
        throw std::invalid_argument("modulate: bit count does not match constellation");
    std::uint32_t label = 0;
    for (auto b : bits)
        label = (label << 1) | (b ? 1u : 0u);
    return modulate_label(label, shape);
}

void demodulate(cd y, cd gain, double amplitude, const ConstellationShape &shape, std::span<std::uint8_t> bits)
{
    if (static_cast<int>(bits.size()) != shape.bits())
        throw std::invalid_argument("demodulate: bit count does not match constellation");
    const std::uint32_t label = demodulate_label(y, gain, amplitude, shape);
    const int n = shape.bits();
    for (int i = 0; i < n; ++i)
        bits[i] = static_cast<std::uint8_t>((label >> (n - 1 - i)) & 1u);
}

void BerAccumulator::add_frame(std::uint64_t bits, std::uint64_t errors)
{
    bits_ += bits;
    errors_ += errors;
    ++frames_;
    const auto e = static_cast<double>(errors);
    const auto n = static_cast<double>(bits);
    s_ee_ += e * e;
    s_en_ += e * n;
    s_nn_ += n * n;
}

void BerAccumulator::merge(const BerAccumulator &other)
{
    bits_ += other.bits_;
    errors_ += other.errors_;
    frames_ += other.frames_;
    s_ee_ += other.s_ee_;
    s_en_ += other.s_en_;
    s_nn_ += other.s_nn_;
}

BerEstimate BerAccumulator::estimate() const
{
    BerEstimate out;
    out.bits_sent = bits_;
    out.bit_errors = errors_;
    out.frames = frames_;
    if (bits_ == 0)
        return out;

    const auto n = static_cast<double>(bits_);
    const double p = static_cast<double>(errors_) / n;
    out.estimate = p;
    if (errors_ == 0)
    {
        out.one_sided = true;
        out.ci95 = 3.0 / n;
        out.se = out.ci95 / 1.96;
        return out;
    }
    out.ci95 = 1.96 * std::sqrt(p * (1.0 - p) / n);

    const double binomial_se = std::sqrt(p * (1.0 - p) / n);
    if (frames_ > 1)
    {
        const auto f = static_cast<double>(frames_);
        const double mean_bits = n / f;
        const double ss = std::max(0.0, s_ee_ - 2.0 * p * s_en_ + p * p * s_nn_);
        const double cluster_se = std::sqrt(ss / (f * (f - 1.0))) / mean_bits;
        out.se = std::max(cluster_se, binomial_se);
    }
    else
    {
        out.se = binomial_se;
    }
    return out;
}

} // namespace iasim
