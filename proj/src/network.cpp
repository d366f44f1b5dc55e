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
#include "iasim/network.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace iasim {

const char *mode_name(Mode m)
{
    switch (m)
    {
    case Mode::MinIL: return "MinIL";
    case Mode::MaxSinr: return "MaxSINR";
    case Mode::SvdSm: return "SVD-SM";
    case Mode::Adaptive: return "Adaptive";
    }
    return "?";
}

Mode parse_mode(const char *name)
{
    const std::string s(name);
    if (s == "MinIL" || s == "minil") return Mode::MinIL;
    if (s == "MaxSINR" || s == "Max-SINR" || s == "maxsinr") return Mode::MaxSinr;
    if (s == "SVD-SM" || s == "SVD" || s == "svd" || s == "sm") return Mode::SvdSm;
    if (s == "Adaptive" || s == "adaptive") return Mode::Adaptive;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

CVec RngStream::unit_vector(int n)
{
    CVec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = complex_gaussian();
    const double norm = v.norm();
    if (norm == 0.0)
    {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    return v / norm;
}

void NetworkConfig::validate() const
{
    auto fail = [](const std::string &key, const std::string &why) {
        throw std::invalid_argument(key + ": " + why);
    };
    if (users < 1) fail("K", "must be >= 1");
    if (nt < 1 || nt > kMaxAntennas) fail("nt", "must be in [1, " + std::to_string(kMaxAntennas) + "]");
    if (nr < 1 || nr > kMaxAntennas) fail("nr", "must be in [1, " + std::to_string(kMaxAntennas) + "]");
    if (!(power > 0.0) || !std::isfinite(power)) fail("power", "must be finite and > 0");
    if (rate_per_pair < 1) fail("rate_per_pair", "must be >= 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon", "must be in [0, 1]");
    if (iterations < 1) fail("iterations", "must be >= 1");
}

ChannelSet::ChannelSet(int users, int nr, int nt, double epsilon)
    : users_(users), nr_(nr), nt_(nt), epsilon_(epsilon)
{
    const auto n = static_cast<std::size_t>(users * users);
    h_hat_.assign(n, CMat::Zero(nr, nt));
    w_.assign(n, CMat::Zero(nr, nt));
    h_.assign(n, CMat::Zero(nr, nt));
}

void ChannelSet::compose()
{
    const double a = std::sqrt(1.0 - epsilon_);
    const double b = std::sqrt(epsilon_);
    for (std::size_t i = 0; i < h_.size(); ++i)
        h_[i] = a * h_hat_[i] + b * w_[i];
}

ChannelSet sample_channel_set(const NetworkConfig &cfg, RngStream &stream)
{
    ChannelSet set(cfg.users, cfg.nr, cfg.nt, cfg.epsilon);
    for (int k = 0; k < cfg.users; ++k)
        for (int l = 0; l < cfg.users; ++l)
        {
            CMat &hh = set.h_hat(k, l);
            CMat &ww = set.w(k, l);
            for (int j = 0; j < cfg.nt; ++j)
                for (int i = 0; i < cfg.nr; ++i)
                    hh(i, j) = stream.complex_gaussian();
            for (int j = 0; j < cfg.nt; ++j)
                for (int i = 0; i < cfg.nr; ++i)
                    ww(i, j) = stream.complex_gaussian();
        }
    set.compose();
    return set;
}

CsiErrorStats csi_error_stats(std::span<const ChannelSet> sets)
{
    if (sets.empty())
        throw std::invalid_argument("csi_error_stats: empty frame list");

    double sh = 0.0, shh = 0.0, sw = 0.0;
    cd cross = 0.0;
    std::size_t n = 0;
    for (const auto &set : sets)
        for (int k = 0; k < set.users(); ++k)
            for (int l = 0; l < set.users(); ++l)
            {
                const CMat &h = set.h(k, l);
                const CMat &hh = set.h_hat(k, l);
                const CMat &w = set.w(k, l);
                sh += h.squaredNorm();
                shh += hh.squaredNorm();
                sw += w.squaredNorm();
                cross += (h.array() * hh.array().conjugate()).sum();
                n += static_cast<std::size_t>(h.size());
            }

    CsiErrorStats out;
    out.entries = n;
    if (n == 0)
        return out;
    const auto dn = static_cast<double>(n);
    out.power_h = sh / dn;
    out.power_h_hat = shh / dn;
    out.power_w = sw / dn;
    const double denom = std::sqrt(sh * shh);
    out.correlation = denom > 0.0 ? cross.real() / denom : 0.0;
    return out;
}

void write_frame_dump(std::ostream &os, const ChannelSet &set)
{
    auto block = [&](const char *tag, auto &&get) {
        os << "# " << tag << '\n';
        for (int k = 0; k < set.users(); ++k)
            for (int l = 0; l < set.users(); ++l)
            {
                const CMat &m = get(k, l);
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = 0; j < m.cols(); ++j)
                        os << k << ' ' << l << ' ' << i << ' ' << j << ' ' << m(i, j).real() << ' '
                           << m(i, j).imag() << '\n';
            }
    };
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    block("h_hat", [&](int k, int l) -> const CMat & { return set.h_hat(k, l); });
    block("w", [&](int k, int l) -> const CMat & { return set.w(k, l); });
    block("h", [&](int k, int l) -> const CMat & { return set.h(k, l); });
    os.flags(flags);
    os.precision(prec);
}

} // namespace iasim
