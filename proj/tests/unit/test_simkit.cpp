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

#include "iasim/ber_theory.hpp"
#include "iasim/simkit.hpp"

#include <cmath>
#include <string>

using namespace iasim;

namespace {

LinkSettings link(Mode mode, double p, double eps = 0.0, bool loading = false)
{
    LinkSettings s;
    s.net.users = 3;
    s.net.nt = 2;
    s.net.nr = 2;
    s.net.power = p;
    s.net.epsilon = eps;
    s.net.seed = 2024;
    s.mode = mode;
    s.bit_loading = loading;
    return s;
}

StopRule frames_only(std::uint64_t n, int workers = 1)
{
    StopRule r;
    r.target_errors = ~0ull;
    r.max_bits = ~0ull;
    r.max_frames = n;
    r.workers = workers;
    return r;
}

std::string error_of(const LinkSettings &s)
{
    try
    {
        s.validate();
    }
    catch (const std::invalid_argument &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("A single pair is error free at very high power")
{
    auto s = link(Mode::MinIL, 1e12);
    s.net.users = 1;
    const auto r = estimate_ber(s, frames_only(1000));
    CHECK(r.ber.frames == 1000);
    CHECK(r.ber.bit_errors == 0);
}

TEST_CASE("Fully uncertain CSI sits on the interference floor")
{
    const auto s = link(Mode::MinIL, 1e4, 1.0);
    const auto r = estimate_ber(s, frames_only(3000));
    CHECK(r.ber.estimate > 1e-2);
    CHECK(r.ber.estimate < 0.5);
    const double floor = minil_ber_floor(shape_for_bits(2), 1.0, 3);
    CHECK(floor == Catch::Approx(0.2764).epsilon(1e-3));
    CHECK(std::abs(r.ber.estimate - *analytic_ber(s)) <= 4.0 * r.ber.se);
}

TEST_CASE("Runs are reproducible and independent of the worker count")
{
    for (Mode m : {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm})
    {
        const auto s = link(m, 10.0, 0.1);
        StopRule one;
        one.target_errors = 500;
        StopRule three = one;
        three.workers = 3;
        const auto a = estimate_ber(s, one);
        const auto b = estimate_ber(s, one);
        const auto c = estimate_ber(s, three);
        CHECK(a.ber.bits_sent == b.ber.bits_sent);
        CHECK(a.ber.bit_errors == b.ber.bit_errors);
        CHECK(c.ber.bits_sent == a.ber.bits_sent);
        CHECK(c.ber.bit_errors == a.ber.bit_errors);
        CHECK(c.mode_counts == a.mode_counts);
    }
    const auto s = link(Mode::Adaptive, 30.0, 0.0, true);
    const auto f1 = run_frame(s, 12);
    const auto f2 = run_frame(s, 12);
    CHECK(f1.errors == f2.errors);
    CHECK(f1.used == f2.used);
}

TEST_CASE("Energy and bit accounting")
{
    for (Mode m : {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm, Mode::Adaptive})
        for (bool loading : {false, true})
        {
            if (m == Mode::Adaptive && !loading)
                continue;
            const auto s = link(m, 20.0, 0.05, loading);
            double energy = 0.0;
            const int frames = 200;
            for (int f = 0; f < frames; ++f)
            {
                const auto r = run_frame(s, f);
                REQUIRE(r.total_bits() == 3u * 2u * 100u);
                REQUIRE(r.total_errors() <= r.total_bits());
                energy += r.energy_per_use;
            }
            INFO(mode_name(m) << " loading " << loading);
            CHECK(energy / frames == Catch::Approx(3.0 * 20.0).epsilon(0.02));
        }
}

TEST_CASE("MinIL reaches 1e-2 where the closed form does")
{
    // Closed form: (1 - sqrt(P / (P + 2))) / 2 = 1e-2.
    const double p_ref = 2.0 / (1.0 / std::pow(1.0 - 2.0 * 1e-2, 2) - 1.0);
    const double lo_db = 15.0, hi_db = 19.0;
    StopRule stop;
    stop.target_errors = 3000;
    const double lo = estimate_ber(link(Mode::MinIL, db_to_linear(lo_db)), stop).ber.estimate;
    const double hi = estimate_ber(link(Mode::MinIL, db_to_linear(hi_db)), stop).ber.estimate;
    REQUIRE(lo > 1e-2);
    REQUIRE(hi < 1e-2);
    const double t = (std::log10(lo) - (-2.0)) / (std::log10(lo) - std::log10(hi));
    const double crossing = lo_db + t * (hi_db - lo_db);
    CHECK(std::abs(crossing - 10.0 * std::log10(p_ref)) < 0.5);
}

TEST_CASE("Analytic references")
{
    const auto s = link(Mode::MinIL, 100.0, 0.1);
    CHECK(*analytic_ber(s) == Catch::Approx(minil_avg_ber(shape_for_bits(2), 100.0, 0.1, 3)));
    auto sm = link(Mode::SvdSm, 100.0);
    CHECK(*analytic_ber(sm) == Catch::Approx(svd_avg_ber(shape_for_bits(3), 300.0, 2, 2, 0.0)));
    CHECK_FALSE(analytic_ber(link(Mode::MaxSinr, 100.0)).has_value());
    CHECK_FALSE(analytic_ber(link(Mode::MinIL, 100.0, 0.0, true)).has_value());
}

TEST_CASE("Link validation")
{
    auto s = link(Mode::MinIL, 10.0);
    CHECK(error_of(s).empty());
    s.net.users = 4;
    CHECK(error_of(s).find("IA properness count fails, nt + nr = 4 < K + 1 = 5") != std::string::npos);
    s.mode = Mode::SvdSm;
    CHECK(error_of(s).empty());
    s = link(Mode::Adaptive, 10.0);
    CHECK_FALSE(error_of(s).empty());
    s.bit_loading = true;
    CHECK(error_of(s).empty());
    s = link(Mode::SvdSm, 10.0);
    s.net.rate_per_pair = 3;
    s.net.users = 3;
    // R = 9 does not divide over 2 eigenmodes.
    CHECK_FALSE(error_of(s).empty());
    s.bit_loading = true;
    CHECK(error_of(s).empty());
    s = link(Mode::MinIL, 10.0);
    s.net.rate_per_pair = 7;
    CHECK_FALSE(error_of(s).empty());
    s.channel_uses = 0;
    CHECK_FALSE(error_of(s).empty());
}

TEST_CASE("Sweep grid")
{
    SweepSpec spec;
    spec.base = link(Mode::MinIL, 1.0).net;
    spec.snr_db = {10.0};
    spec.epsilon = {0.0};
    spec.modes = {Mode::MinIL};
    spec.loading = {false};
    spec.stop = frames_only(20);
    const auto rows = sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].run.ber.frames == 20);
    CHECK(rows[0].snr_db == 10.0);
    CHECK(rows[0].analytic.has_value());

    spec.modes = {Mode::MinIL, Mode::Adaptive};
    spec.loading = {false, true};
    spec.snr_db = {0.0, 5.0};
    // Adaptive without loading is skipped: (2 + 1) x 2 rows.
    CHECK(sweep(spec).size() == 6);

    spec.snr_db.clear();
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_CASE("Signal statistics table")
{
    NetworkConfig cfg;
    cfg.nt = 3;
    cfg.seed = 5;
    const auto rows = fig1_stats(cfg, {1.0, 100.0}, 400);
    REQUIRE(rows.size() == 2);
    for (const auto &r : rows)
    {
        CHECK(r.maxsinr_signal >= 1.0);
        CHECK(r.maxsinr_signal <= r.beamforming_signal);
        CHECK(r.minil_signal == Catch::Approx(1.0).epsilon(0.15));
    }
    CHECK(rows[1].maxsinr_leakage < rows[0].maxsinr_leakage * 100.0);
}
