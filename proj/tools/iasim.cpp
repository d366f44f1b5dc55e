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
#include "iasim/config.hpp"
#include "iasim/experiments.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"iasim: BER simulation of interference alignment and spatial multiplexing"};

    std::string config_path, preset_name;
    iasim::RunOptions opts;
    std::string out_dir = ".";
    bool no_timestamp = false, list = false;

    auto *config_opt = app.add_option("--config", config_path, "experiment config file (key = value)");
    auto *preset_opt = app.add_option("--preset", preset_name, "built-in experiment: fig1 ... fig7");
    config_opt->excludes(preset_opt);
    app.add_option("--seed", opts.seed, "master seed");
    app.add_option("--workers", opts.workers, "worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--target-errors", opts.target_errors, "stop a point after this many bit errors")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-bits", opts.max_bits, "stop a point after this many bits")->check(CLI::PositiveNumber);
    app.add_flag("--no-timestamp", no_timestamp, "omit the generated-at header line");
    app.add_flag("--list-presets", list, "print the preset names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list)
    {
        for (const auto &n : iasim::preset_names())
            std::cout << n << '\n';
        return 0;
    }
    if (config_path.empty() && preset_name.empty())
    {
        std::cerr << "error: one of --config or --preset is required\n";
        return 2;
    }

    try
    {
        const iasim::ExperimentConfig cfg =
            config_path.empty() ? iasim::preset(preset_name) : iasim::load_config(config_path);
        opts.out_dir = out_dir;
        opts.timestamp = !no_timestamp;
        const auto path = iasim::run_experiment(cfg, opts);
        std::cout << "wrote " << path.string() << '\n';
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
