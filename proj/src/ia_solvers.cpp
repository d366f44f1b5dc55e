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
#include "iasim/ia_solvers.hpp"

#include "iasim/hermitian.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace iasim {

namespace {

enum class Rule { MinLeakage, MaxSinr };

void check_dims(const ChannelGrid &ch, std::span<const double> powers)
{
    if (static_cast<int>(powers.size()) != ch.users())
        throw std::invalid_argument("IA solver: expected " + std::to_string(ch.users()) + " powers, got " +
                                    std::to_string(powers.size()));
    for (double p : powers)
        if (!(p >= 0.0))
            throw std::invalid_argument("IA solver: powers must be >= 0");
}

CVec normalized_or_first(const CVec &x)
{
    const double n = x.norm();
    if (n > 0.0)
        return x / n;
    CVec e = CVec::Zero(x.size());
    e(0) = 1.0;
    return e;
}

// Receive side: update every u_k given the precoders.
void forward_pass(const ChannelGrid &ch, std::span<const double> p, const std::vector<CVec> &v,
                  std::vector<CVec> &u, Rule rule)
{
    const int K = ch.users();
    const int nr = ch.nr();
    CMat q(nr, nr);
    CVec g(nr);
    for (int k = 0; k < K; ++k)
    {
        q.setZero();
        for (int l = 0; l < K; ++l)
        {
            if (l == k || p[l] == 0.0)
                continue;
            g.noalias() = ch(k, l) * v[l];
            q.noalias() += p[l] * (g * g.adjoint());
        }
        if (rule == Rule::MinLeakage)
        {
            u[k] = min_eigenvector(q);
        }
        else
        {
            q.diagonal().array() += 1.0;
            g.noalias() = ch(k, k) * v[k];
            u[k] = normalized_or_first(q.llt().solve(g));
        }
    }
}

// Transmit side: reciprocal network, roles of u and v exchanged.
void reverse_pass(const ChannelGrid &ch, std::span<const double> p, const std::vector<CVec> &u,
                  std::vector<CVec> &v, Rule rule)
{
    const int K = ch.users();
    const int nt = ch.nt();
    CMat q(nt, nt);
    CVec f(nt);
    for (int k = 0; k < K; ++k)
    {
        q.setZero();
        for (int l = 0; l < K; ++l)
        {
            if (l == k || p[l] == 0.0)
                continue;
            f.noalias() = ch(l, k).adjoint() * u[l];
            q.noalias() += p[l] * (f * f.adjoint());
        }
        if (rule == Rule::MinLeakage)
        {
            v[k] = min_eigenvector(q);
        }
        else
        {
            q.diagonal().array() += 1.0;
            f.noalias() = ch(k, k).adjoint() * u[k];
            v[k] = normalized_or_first(q.llt().solve(f));
        }
    }
}

double total_leakage(const ChannelGrid &ch, std::span<const double> p, const std::vector<CVec> &v,
                     const std::vector<CVec> &u)
{
    double sum = 0.0;
    for (int k = 0; k < ch.users(); ++k)
        sum += interference_leakage(k, u[k], v, ch.row(k), p);
    return sum;
}

IaSolution solve(const ChannelGrid &ch, std::span<const double> powers, const SolverOptions &opts,
                 RngStream &stream, Rule rule)
{
    check_dims(ch, powers);
    if (opts.iterations < 1)
        throw std::invalid_argument("IA solver: iterations must be >= 1");

    const int K = ch.users();
    IaSolution sol;
    sol.v.reserve(static_cast<std::size_t>(K));
    if (opts.initial_precoders)
    {
        if (static_cast<int>(opts.initial_precoders->size()) != K)
            throw std::invalid_argument("IA solver: warm start has wrong number of precoders");
        for (const auto &v0 : *opts.initial_precoders)
        {
            if (v0.size() != ch.nt())
                throw std::invalid_argument("IA solver: warm start precoder has wrong dimension");
            sol.v.push_back(normalized_or_first(v0));
        }
    }
    else
    {
        for (int k = 0; k < K; ++k)
            sol.v.push_back(stream.unit_vector(ch.nt()));
    }
    sol.u.assign(static_cast<std::size_t>(K), CVec::Zero(ch.nr()));

    const double pmax = powers.empty() ? 0.0 : *std::max_element(powers.begin(), powers.end());
    const double stop_level = opts.early_stop * K * pmax;
    for (int it = 0; it < opts.iterations; ++it)
    {
        forward_pass(ch, powers, sol.v, sol.u, rule);
        reverse_pass(ch, powers, sol.u, sol.v, rule);
        if (opts.leakage_trace || opts.early_stop > 0.0)
        {
            const double total = total_leakage(ch, powers, sol.v, sol.u);
            if (opts.leakage_trace)
                opts.leakage_trace->push_back(total);
            if (opts.early_stop > 0.0 && total < stop_level)
                break;
        }
    }
    forward_pass(ch, powers, sol.v, sol.u, rule);
    evaluate_metrics(sol, ch, powers);
    return sol;
}

} // namespace

double IaSolution::total_leakage() const
{
    return std::accumulate(leakage.begin(), leakage.end(), 0.0);
}

double interference_leakage(int k, const CVec &u, std::span<const CVec> v_all, std::span<const CMat> h_row,
                            std::span<const double> powers)
{
    const auto K = v_all.size();
    if (h_row.size() != K || powers.size() != K)
        throw std::invalid_argument("interference_leakage: row, precoder and power counts differ");
    if (k < 0 || static_cast<std::size_t>(k) >= K)
        throw std::invalid_argument("interference_leakage: pair index out of range");

    double sum = 0.0;
    for (std::size_t l = 0; l < K; ++l)
    {
        if (static_cast<int>(l) == k)
            continue;
        const CMat &h = h_row[l];
        if (h.rows() != u.size() || h.cols() != v_all[l].size())
            throw std::invalid_argument("interference_leakage: dimension mismatch");
        sum += powers[l] * std::norm(u.dot(h * v_all[l]));
    }
    return sum;
}

IaSolution minil_solve(const ChannelGrid &channels, std::span<const double> powers, const SolverOptions &opts,
                       RngStream &stream)
{
    return solve(channels, powers, opts, stream, Rule::MinLeakage);
}

IaSolution maxsinr_solve(const ChannelGrid &channels, std::span<const double> powers, const SolverOptions &opts,
                         RngStream &stream)
{
    return solve(channels, powers, opts, stream, Rule::MaxSinr);
}

void evaluate_metrics(IaSolution &sol, const ChannelGrid &channels, std::span<const double> powers)
{
    check_dims(channels, powers);
    const int K = channels.users();
    sol.power.assign(powers.begin(), powers.end());
    sol.z.resize(static_cast<std::size_t>(K));
    sol.leakage.resize(static_cast<std::size_t>(K));
    sol.sinr.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        sol.z[k] = sol.u[k].dot(channels(k, k) * sol.v[k]);
        sol.leakage[k] = interference_leakage(k, sol.u[k], sol.v, channels.row(k), powers);
        sol.sinr[k] = powers[k] * std::norm(sol.z[k]) / (1.0 + sol.leakage[k]);
    }
}

std::vector<double> evaluate_true_interference(const IaSolution &sol, const ChannelGrid &true_channels,
                                               std::span<const double> powers)
{
    check_dims(true_channels, powers);
    std::vector<double> out(static_cast<std::size_t>(true_channels.users()));
    for (int k = 0; k < true_channels.users(); ++k)
        out[k] = interference_leakage(k, sol.u[k], sol.v, true_channels.row(k), powers);
    return out;
}

std::vector<double> evaluate_true_sinr(const IaSolution &sol, const ChannelGrid &true_channels,
                                       std::span<const double> powers, double noise_power)
{
    const auto interference = evaluate_true_interference(sol, true_channels, powers);
    std::vector<double> out(interference.size());
    for (int k = 0; k < true_channels.users(); ++k)
    {
        const cd z = sol.u[k].dot(true_channels(k, k) * sol.v[k]);
        out[k] = powers[k] * std::norm(z) / (noise_power + interference[k]);
    }
    return out;
}

void write_solution_dump(std::ostream &os, const IaSolution &sol)
{
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    auto block = [&](const char *tag, const std::vector<CVec> &vs) {
        os << "# " << tag << '\n';
        for (std::size_t k = 0; k < vs.size(); ++k)
            for (int i = 0; i < vs[k].size(); ++i)
                os << k << ' ' << i << ' ' << vs[k](i).real() << ' ' << vs[k](i).imag() << '\n';
    };
    block("v", sol.v);
    block("u", sol.u);
    os.flags(flags);
    os.precision(prec);
}

} // namespace iasim
