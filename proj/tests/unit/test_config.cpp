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
#include "catch_amalgamated.hpp"

#include "iasim/config.hpp"
#include "iasim/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace iasim;

namespace {

std::string error_of(const std::string &text)
{
    try
    {
        parse_config(text, "t.ini");
    }
    catch (const std::invalid_argument &e)
    {
        return e.what();
    }
    return {};
}

const char *kMinimal = "K = 3\nnt = 2\nnr = 2\nsnr_db = 10\n";

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("iasim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("Minimal configuration")
{
    const auto cfg = parse_config(kMinimal);
    CHECK(cfg.kind == ExperimentConfig::Kind::Ber);
    CHECK(cfg.sweep.base.users == 3);
    CHECK(cfg.sweep.snr_db == std::vector<double>{10.0});
    CHECK(cfg.sweep.epsilon == std::vector<double>{0.0});
    CHECK(cfg.sweep.modes.size() == 3);
    CHECK(cfg.sweep.loading == std::vector<bool>{false});
}

TEST_CASE("Grids, lists and comments")
{
    const auto cfg = parse_config("# header\nK = 4  # users\nnt = 3\nnr = 2\nmode = MinIL\n"
                                  "snr_db = 0:5:30\nepsilon = [0, 0.05, 0.1]\nloading = [false, true]\n"
                                  "target_errors = 1e3\nmax_bits = 1e8\n");
    CHECK(cfg.sweep.base.users == 4);
    CHECK(cfg.sweep.snr_db == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
    CHECK(cfg.sweep.epsilon == std::vector<double>{0.0, 0.05, 0.1});
    CHECK(cfg.sweep.modes == std::vector<Mode>{Mode::MinIL});
    CHECK(cfg.sweep.stop.target_errors == 1000);
    CHECK(cfg.sweep.stop.max_bits == 100'000'000);
}

TEST_CASE("Errors name the key and line")
{
    CHECK(error_of(std::string(kMinimal) + "epsilon = 1.5\n").find("t.ini:5: key 'epsilon'") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "snr = 3\n").find("t.ini:5: unknown key 'snr'") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "K = 4\n").find("t.ini:5: key 'K' given twice") != std::string::npos);
    CHECK(error_of("K = 3\nnt = 2\nsnr_db = 1\n").find("missing required key 'nr'") != std::string::npos);
    CHECK(error_of("K = 3\nnt = two\nnr = 2\nsnr_db = 1\n").find("t.ini:2: key 'nt'") != std::string::npos);
    CHECK(error_of("K = 3\nnt = 2\nnr = 2\nsnr_db = 0:-1:5\n").find("key 'snr_db'") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "modes = [MinIL, QPSK]\n").find("key 'modes'") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "just text\n").find("t.ini:5: expected 'key = value'") !=
          std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "powers = [1]\n").find("key 'powers'") != std::string::npos);
    CHECK(error_of("K = 3\nnt = 2\nnr = 2\nsnr_db = []\n").find("snr_db") != std::string::npos);
}

TEST_CASE("Improper IA networks are rejected for IA modes")
{
    CHECK(error_of("K = 4\nnt = 2\nnr = 2\nsnr_db = 10\nmodes = MinIL\n")
              .find("IA properness count fails, nt + nr = 4 < K + 1 = 5") != std::string::npos);
    CHECK(error_of("K = 4\nnt = 3\nnr = 2\nsnr_db = 10\nmodes = MinIL\n").empty());
    CHECK(error_of("K = 4\nnt = 2\nnr = 2\nsnr_db = 10\nmodes = SVD-SM\n").empty());
}

TEST_CASE("Signal statistics configuration")
{
    const auto cfg = parse_config("kind = signal_stats\nK = 3\nnt = 3\nnr = 2\npowers = [1, 10, 100]\nframes = 50\n");
    CHECK(cfg.kind == ExperimentConfig::Kind::SignalStats);
    CHECK(cfg.powers.size() == 3);
    CHECK(cfg.frames == 50);
    CHECK(error_of("kind = signal_stats\nK = 3\nnt = 3\nnr = 2\n").find("missing required key 'powers'") !=
          std::string::npos);
}

TEST_CASE("Presets")
{
    const auto names = preset_names();
    CHECK(names == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"});
    for (const auto &n : names)
        CHECK_NOTHROW(preset(n).validate());
    const auto f2 = preset("fig2");
    CHECK(f2.sweep.modes.size() == 3);
    CHECK(f2.sweep.snr_db.size() == 7);
    CHECK(f2.sweep.epsilon.size() == 3);
    const auto f5 = preset("fig5");
    CHECK(f5.sweep.snr_db == std::vector<double>{20.0});
    CHECK(preset("fig1").kind == ExperimentConfig::Kind::SignalStats);
    CHECK(preset("fig4").sweep.base.users == 4);
    CHECK_THROWS_AS(preset("fig8"), std::invalid_argument);
}

TEST_CASE("Experiment output")
{
    auto cfg = parse_config("experiment = tiny\nK = 3\nnt = 2\nnr = 2\nsnr_db = [5, 10]\n"
                            "modes = [MinIL, SVD-SM]\nmax_frames = 10\n");
    const auto dir = scratch("out");
    RunOptions opts;
    opts.out_dir = dir;
    opts.timestamp = false;
    const auto path = run_experiment(cfg, opts);
    CHECK(path == dir / "tiny.csv");
    const std::string first = slurp(path);
    run_experiment(cfg, opts);
    CHECK(slurp(path) == first);

    std::istringstream in(first);
    std::string header;
    std::getline(in, header);
    CHECK(header == "experiment,mode,loading,K,nt,nr,snr_db,epsilon,bits,errors,ber,ci95,analytic_ber");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        ++rows;
    CHECK(rows == 4);

    opts.timestamp = true;
    run_experiment(cfg, opts);
    CHECK(slurp(path).rfind("# generated ", 0) == 0);

    const auto empty_dir = scratch("empty");
    auto bad = cfg;
    bad.name = "bad";
    bad.sweep.snr_db.clear();
    opts.out_dir = empty_dir;
    CHECK_THROWS_AS(run_experiment(bad, opts), std::invalid_argument);
    CHECK(std::filesystem::is_empty(empty_dir));

    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(empty_dir);
}

TEST_CASE("Config files")
{
    const auto dir = scratch("files");
    {
        std::ofstream(dir / "a.ini") << kMinimal;
    }
    CHECK(load_config(dir / "a.ini").sweep.base.nt == 2);
    CHECK_THROWS(load_config(dir / "missing.ini"));
    std::filesystem::remove_all(dir);
}
