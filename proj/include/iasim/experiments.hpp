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
#ifndef IASIM_EXPERIMENTS_HPP
#define IASIM_EXPERIMENTS_HPP

#include "iasim/config.hpp"
#include "iasim/simkit.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iasim {

/// Names of the built-in experiments (fig1 ... fig7).
std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
ExperimentConfig preset(std::string_view name);

/// Columns: experiment, mode, loading, K, nt, nr, snr_db, epsilon, bits,
/// errors, ber, ci95, analytic_ber. A `# generated ...` line is prepended
/// when `timestamp` is set.
void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows, bool timestamp);

/// Columns: experiment, K, nt, nr, power, maxsinr_signal, maxsinr_leakage,
/// minil_signal, beamforming_signal.
void write_signal_csv(std::ostream &os, const ExperimentConfig &cfg, const std::vector<Fig1Row> &rows,
                      bool timestamp);

struct RunOptions
{
    std::filesystem::path out_dir = ".";
    bool timestamp = true;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::uint64_t> target_errors;
    std::optional<std::uint64_t> max_bits;
};

/// Runs the experiment and writes `<out_dir>/<name>.csv`. Nothing is
/// written when validation fails. Returns the path written.
std::filesystem::path run_experiment(ExperimentConfig cfg, const RunOptions &opts);

} // namespace iasim

#endif
