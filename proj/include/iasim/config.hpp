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
#ifndef IASIM_CONFIG_HPP
#define IASIM_CONFIG_HPP

#include "iasim/simkit.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace iasim {

/// A named experiment: either a BER sweep or the desired-signal /
/// interference statistics table.
struct ExperimentConfig
{
    enum class Kind
    {
        Ber,
        SignalStats
    };

    std::string name = "custom";
    Kind kind = Kind::Ber;
    SweepSpec sweep;
    std::vector<double> powers;  // SignalStats only, linear
    int frames = 10000;          // SignalStats only

    /// Throws std::invalid_argument when any grid point cannot run.
    void validate() const;
};

/// Parses flat `key = value` text. Values are scalars, lists `[a, b, c]`
/// or ranges `start:step:stop` (inclusive). `#` starts a comment.
/// Unknown, duplicate, missing or malformed keys throw
/// std::invalid_argument naming the key and `origin:line`.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");

/// Reads and parses a file; I/O failures name the path.
ExperimentConfig load_config(const std::filesystem::path &path);

} // namespace iasim

#endif
