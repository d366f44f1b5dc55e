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
#ifndef IASIM_RNG_HPP
#define IASIM_RNG_HPP

#include "iasim/types.hpp"

#include <cstdint>
#include <random>

namespace iasim {

/// Independent consumers of randomness within one frame. Each gets its own
/// substream so that, e.g., every transmission mode sees the same channels,
/// data bits and noise for a given frame index.
enum class Substream : std::uint64_t {
    Channel = 1,
    MinIlInit = 2,
    MaxSinrInit = 3,
    Data = 4,
    Noise = 5,
    Auxiliary = 6,
};

/// SplitMix64 finalizer; used to derive uncorrelated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic pseudorandom stream keyed by (seed, frame, substream).
///
/// The key is a pure function of its three coordinates, so frames may be
/// generated in any order or on any worker and still reproduce bit-exactly.
class RngStream
{
  public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) : engine_(key) {}

    static RngStream for_frame(std::uint64_t seed, std::uint64_t frame, Substream which)
    {
        std::uint64_t key = mix64(seed);
        key = mix64(key ^ mix64(frame + 0x632be59bd9b4e019ULL));
        key = mix64(key ^ static_cast<std::uint64_t>(which));
        return RngStream(key);
    }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Standard real Gaussian.
    double gaussian() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with unit total variance.
    cd complex_gaussian()
    {
        constexpr double s = 0.70710678118654752440;
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    double uniform() { return std::generate_canonical<double, 53>(engine_); }

    /// Unit-norm vector drawn uniformly on the complex sphere.
    CVec unit_vector(int n);

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace iasim

#endif
