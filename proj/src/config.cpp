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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace iasim {

namespace {

constexpr std::size_t kMaxGridPoints = 100000;

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

struct Entry
{
    std::string value;
    std::string where;  // origin:line
};

[[noreturn]] void fail(const std::string &key, const Entry &e, const std::string &what)
{
    throw std::invalid_argument(e.where + ": key '" + key + "': " + what);
}

double to_double(const std::string &key, const Entry &e, const std::string &tok)
{
    double v = 0.0;
    const auto *end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        fail(key, e, "'" + tok + "' is not a finite number");
    return v;
}

std::uint64_t to_u64(const std::string &key, const Entry &e, const std::string &tok)
{
    std::uint64_t v = 0;
    const auto *end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end)
    {
        // Accept integral values written in exponent form, e.g. 1e8.
        const double d = to_double(key, e, tok);
        if (d < 0 || d != std::floor(d) || d > 1.8e19)
            fail(key, e, "'" + tok + "' is not a non-negative integer");
        return static_cast<std::uint64_t>(d);
    }
    return v;
}

int to_int(const std::string &key, const Entry &e, const std::string &tok)
{
    const std::uint64_t v = to_u64(key, e, tok);
    if (v > 1'000'000'000)
        fail(key, e, "'" + tok + "' is out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string &key, const Entry &e, const std::string &tok)
{
    if (tok == "true" || tok == "1" || tok == "yes" || tok == "on")
        return true;
    if (tok == "false" || tok == "0" || tok == "no" || tok == "off")
        return false;
    fail(key, e, "'" + tok + "' is not a boolean");
}

// Items of `[a, b, c]` or a single scalar.
std::vector<std::string> items(const std::string &key, const Entry &e)
{
    std::string v = e.value;
    if (!v.empty() && v.front() == '[')
    {
        if (v.back() != ']')
            fail(key, e, "unterminated list");
        v = v.substr(1, v.size() - 2);
        std::vector<std::string> out;
        if (trim(v).empty())
            return out;
        std::stringstream ss(v);
        std::string tok;
        while (std::getline(ss, tok, ','))
        {
            tok = trim(tok);
            if (tok.empty())
                fail(key, e, "empty list item");
            out.push_back(tok);
        }
        return out;
    }
    if (v.empty())
        fail(key, e, "missing value");
    return {v};
}

std::vector<double> numeric_grid(const std::string &key, const Entry &e)
{
    const std::string &v = e.value;
    if (!v.empty() && v.front() != '[' && v.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(v);
        std::string tok;
        while (std::getline(ss, tok, ':'))
            parts.push_back(trim(tok));
        if (parts.size() != 3)
            fail(key, e, "range must be start:step:stop");
        const double start = to_double(key, e, parts[0]);
        const double step = to_double(key, e, parts[1]);
        const double stop = to_double(key, e, parts[2]);
        if (!(step > 0.0) || stop < start)
            fail(key, e, "range needs step > 0 and stop >= start");
        const double span = (stop - start) / step;
        if (span > static_cast<double>(kMaxGridPoints))
            fail(key, e, "range has too many points");
        const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = start + step * static_cast<double>(i);
        return out;
    }
    std::vector<double> out;
    for (const auto &tok : items(key, e))
        out.push_back(to_double(key, e, tok));
    return out;
}

const std::set<std::string> &known_keys()
{
    static const std::set<std::string> keys = {
        "experiment", "kind",       "K",          "nt",        "nr",         "rate_per_pair",
        "iterations", "seed",       "snr_db",     "epsilon",   "modes",      "loading",
        "channel_uses", "target_errors", "max_bits", "min_frames", "max_frames", "workers",
        "powers",     "frames"};
    return keys;
}

} // namespace

void ExperimentConfig::validate() const
{
    if (name.empty() || name.find_first_of("/\\") != std::string::npos)
        throw std::invalid_argument("experiment: '" + name + "' is not a valid name");
    sweep.base.validate();

    if (kind == Kind::SignalStats)
    {
        if (powers.empty())
            throw std::invalid_argument("powers: grid is empty");
        for (double p : powers)
            if (!(p > 0.0))
                throw std::invalid_argument("powers: values must be > 0");
        if (frames < 1)
            throw std::invalid_argument("frames: must be >= 1");
        if (!sweep.base.ia_proper())
            throw std::invalid_argument("K: IA properness count fails, nt + nr = " +
                                        std::to_string(sweep.base.nt + sweep.base.nr) + " < K + 1 = " +
                                        std::to_string(sweep.base.users + 1));
        return;
    }

    if (sweep.snr_db.empty())
        throw std::invalid_argument("snr_db: grid is empty");
    if (sweep.epsilon.empty())
        throw std::invalid_argument("epsilon: grid is empty");
    if (sweep.modes.empty())
        throw std::invalid_argument("modes: list is empty");
    if (sweep.loading.empty())
        throw std::invalid_argument("loading: list is empty");
    for (double snr : sweep.snr_db)
        if (!std::isfinite(snr) || snr > 200.0)
            throw std::invalid_argument("snr_db: value out of range");
    if (sweep.stop.target_errors < 1)
        throw std::invalid_argument("target_errors: must be >= 1");
    if (sweep.stop.max_bits < 1)
        throw std::invalid_argument("max_bits: must be >= 1");

    bool any = false;
    for (double eps : sweep.epsilon)
        for (Mode m : sweep.modes)
            for (bool loading : sweep.loading)
            {
                if (m == Mode::Adaptive && !loading)
                    continue;
                LinkSettings s;
                s.net = sweep.base;
                s.net.epsilon = eps;
                s.net.power = db_to_linear(sweep.snr_db.front());
                s.mode = m;
                s.bit_loading = loading;
                s.channel_uses = sweep.channel_uses;
                try
                {
                    s.validate();
                }
                catch (const std::invalid_argument &err)
                {
                    throw std::invalid_argument(std::string(err.what()) + " (mode " + mode_name(m) + ", loading " +
                                                (loading ? "on" : "off") + ")");
                }
                any = true;
            }
    if (!any)
        throw std::invalid_argument("modes: no runnable mode/loading combination (Adaptive requires loading)");
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin)
{
    std::map<std::string, Entry> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const std::string where = std::string(origin) + ":" + std::to_string(lineno);
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected 'key = value'");
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key == "mode")
            key = "modes";
        if (!known_keys().count(key))
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        if (entries.count(key))
            throw std::invalid_argument(where + ": key '" + key + "' given twice");
        entries[key] = {trim(std::string_view(t).substr(eq + 1)), where};
    }

    ExperimentConfig cfg;
    auto has = [&](const char *k) { return entries.count(k) != 0; };
    auto require = [&](const char *k) {
        if (!has(k))
            throw std::invalid_argument(std::string(origin) + ": missing required key '" + k + "'");
        return entries.at(k);
    };
    auto scalar = [&](const char *k) {
        const Entry &e = entries.at(k);
        const auto v = items(k, e);
        if (v.size() != 1 || e.value.front() == '[')
            fail(k, e, "expected a single value");
        return v.front();
    };

    if (has("experiment"))
        cfg.name = scalar("experiment");
    if (has("kind"))
    {
        const std::string k = scalar("kind");
        if (k == "ber")
            cfg.kind = ExperimentConfig::Kind::Ber;
        else if (k == "signal_stats")
            cfg.kind = ExperimentConfig::Kind::SignalStats;
        else
            fail("kind", entries.at("kind"), "expected 'ber' or 'signal_stats'");
    }

    NetworkConfig &net = cfg.sweep.base;
    require("K");
    require("nt");
    require("nr");
    net.users = to_int("K", entries.at("K"), scalar("K"));
    net.nt = to_int("nt", entries.at("nt"), scalar("nt"));
    net.nr = to_int("nr", entries.at("nr"), scalar("nr"));
    if (has("rate_per_pair"))
        net.rate_per_pair = to_int("rate_per_pair", entries.at("rate_per_pair"), scalar("rate_per_pair"));
    if (has("iterations"))
        net.iterations = to_int("iterations", entries.at("iterations"), scalar("iterations"));
    if (has("seed"))
        net.seed = to_u64("seed", entries.at("seed"), scalar("seed"));

    StopRule &stop = cfg.sweep.stop;
    if (has("target_errors"))
        stop.target_errors = to_u64("target_errors", entries.at("target_errors"), scalar("target_errors"));
    if (has("max_bits"))
        stop.max_bits = to_u64("max_bits", entries.at("max_bits"), scalar("max_bits"));
    if (has("min_frames"))
        stop.min_frames = to_u64("min_frames", entries.at("min_frames"), scalar("min_frames"));
    if (has("max_frames"))
        stop.max_frames = to_u64("max_frames", entries.at("max_frames"), scalar("max_frames"));
    if (has("workers"))
        stop.workers = to_int("workers", entries.at("workers"), scalar("workers"));
    if (has("channel_uses"))
        cfg.sweep.channel_uses = to_int("channel_uses", entries.at("channel_uses"), scalar("channel_uses"));
    cfg.sweep.experiment = cfg.name;

    if (cfg.kind == ExperimentConfig::Kind::SignalStats)
    {
        cfg.powers = numeric_grid("powers", require("powers"));
        if (has("frames"))
            cfg.frames = to_int("frames", entries.at("frames"), scalar("frames"));
        if (has("epsilon"))
            net.epsilon = to_double("epsilon", entries.at("epsilon"), scalar("epsilon"));
        for (const char *k : {"snr_db", "modes", "loading"})
            if (has(k))
                fail(k, entries.at(k), "not used by kind = signal_stats");
    }
    else
    {
        cfg.sweep.snr_db = numeric_grid("snr_db", require("snr_db"));
        cfg.sweep.epsilon = has("epsilon") ? numeric_grid("epsilon", entries.at("epsilon")) : std::vector<double>{0.0};
        for (double eps : cfg.sweep.epsilon)
            if (!(eps >= 0.0 && eps <= 1.0))
                fail("epsilon", entries.at("epsilon"), "values must lie in [0, 1]");
        if (has("modes"))
        {
            cfg.sweep.modes.clear();
            for (const auto &tok : items("modes", entries.at("modes")))
            {
                try
                {
                    cfg.sweep.modes.push_back(parse_mode(tok.c_str()));
                }
                catch (const std::invalid_argument &err)
                {
                    fail("modes", entries.at("modes"), err.what());
                }
            }
        }
        else
        {
            cfg.sweep.modes = {Mode::MinIL, Mode::MaxSinr, Mode::SvdSm};
        }
        if (has("loading"))
        {
            for (const auto &tok : items("loading", entries.at("loading")))
                cfg.sweep.loading.push_back(to_bool("loading", entries.at("loading"), tok));
        }
        else
        {
            cfg.sweep.loading = {false};
        }
        for (const char *k : {"powers", "frames"})
            if (has(k))
                fail(k, entries.at(k), "not used by kind = ber");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw std::runtime_error("error reading config file " + path.string());
    return parse_config(buf.str(), path.string());
}

} // namespace iasim
