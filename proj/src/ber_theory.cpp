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
#include "iasim/ber_theory.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace iasim {

namespace {

// Per-axis terms of the exact bit-error expression for one side of the
// rectangle (`side` is I or J), keyed by the odd-multiple index i.
void add_axis_terms(std::map<int, double> &acc, int side, double norm)
{
    int bits = 0;
    while ((1 << bits) < side)
        ++bits;
    for (int m = 1; m <= bits; ++m)
    {
        const long half = 1L << (m - 1);
        const long last = (side - side / (1L << m)) - 1;  // (1 - 2^-m) side - 1
        for (long i = 0; i <= last; ++i)
        {
            const long floor_sign = (i * half) / side;
            const long eta = half - static_cast<long>(std::floor(static_cast<double>(i * half) / side + 0.5));
            if (eta == 0)
                continue;
            const double sign = (floor_sign % 2 == 0) ? 1.0 : -1.0;
            acc[static_cast<int>(i)] += norm * (2.0 / side) * sign * static_cast<double>(eta);
        }
    }
}

std::vector<QTerm> build_q_terms(const ConstellationShape &shape)
{
    const double denom = shape.i_side * shape.i_side + shape.j_side * shape.j_side - 2.0;
    const double norm = 1.0 / shape.bits();
    std::map<int, double> acc;
    add_axis_terms(acc, shape.i_side, norm);
    if (shape.j_side > 1)
        add_axis_terms(acc, shape.j_side, norm);

    std::vector<QTerm> terms;
    for (const auto &[i, w] : acc)
    {
        if (w == 0.0)
            continue;
        const double odd = 2.0 * i + 1.0;
        terms.push_back({w, 6.0 * odd * odd / denom});
    }
    return terms;
}

// int_0^inf Q(sqrt(beta x)) x^b e^{-x} dx / b!
//   = (1 - mu sum_{k=0}^{b} C(2k, k) t^k) / 2,  mu = sqrt(beta / (beta + 2)),
//   t = 1 / (2 (beta + 2)).
// Since sum_{k>=0} C(2k, k) t^k = 1 / mu the bracket equals the tail
// mu sum_{k>b}, which is summed directly at high SNR to avoid cancellation.
double gamma_weighted_q(double beta, int b)
{
    if (beta <= 0.0)
        return 0.5;
    const double mu = std::sqrt(beta / (beta + 2.0));
    const double t = 1.0 / (2.0 * (beta + 2.0));
    double term = 1.0;  // C(2k, k) t^k at k = 0
    if (4.0 * t < 0.5)
    {
        for (int k = 1; k <= b + 1; ++k)
            term *= 2.0 * (2.0 * k - 1.0) / k * t;
        double tail = 0.0;
        for (int k = b + 1; k < 10000; ++k)
        {
            tail += term;
            if (term < 1e-18 * tail)
                break;
            term *= 2.0 * (2.0 * k + 1.0) / (k + 1.0) * t;
        }
        return 0.5 * mu * tail;
    }
    double head = 0.0;
    for (int k = 0; k <= b; ++k)
    {
        head += term;
        term *= 2.0 * (2.0 * k + 1.0) / (k + 1.0) * t;
    }
    return 0.5 * (1.0 - mu * head);
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

} // namespace

double q_function(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440); }

const std::vector<QTerm> &ber_q_terms(const ConstellationShape &shape)
{
    static const auto table = [] {
        std::array<std::vector<QTerm>, kMaxBitsPerSymbol + 1> t{};
        for (int b = 1; b <= kMaxBitsPerSymbol; ++b)
            t[b] = build_q_terms(shape_for_bits(b));
        return t;
    }();
    const int b = shape.bits();
    if (b >= 1 && b <= kMaxBitsPerSymbol && shape == shape_for_bits(b))
        return table[b];
    throw std::invalid_argument("ber_q_terms: unsupported constellation shape");
}

double ber_awgn_instant(const ConstellationShape &shape, double post_snr)
{
    const double snr = post_snr > 0.0 ? post_snr : 0.0;
    double ber = 0.0;
    for (const auto &t : ber_q_terms(shape))
        ber += t.weight * q_function(std::sqrt(t.scale * snr));
    return ber;
}

double rayleigh_avg_q(double c)
{
    if (c <= 0.0)
        return 0.5;
    return 0.5 * (1.0 - 1.0 / std::sqrt(1.0 + 2.0 / c));
}

double minil_avg_ber(const ConstellationShape &shape, double p, double epsilon, int k_users)
{
    if (!(p >= 0.0) || !(epsilon >= 0.0 && epsilon <= 1.0) || k_users < 1)
        throw std::invalid_argument("minil_avg_ber: invalid argument");
    const double effective = p / (epsilon * (k_users - 1) * p + 1.0);
    double ber = 0.0;
    for (const auto &t : ber_q_terms(shape))
        ber += t.weight * rayleigh_avg_q(t.scale * effective);
    return ber;
}

double minil_ber_floor(const ConstellationShape &shape, double epsilon, int k_users)
{
    const double interference = epsilon * (k_users - 1);
    if (interference <= 0.0)
        return 0.0;
    double ber = 0.0;
    for (const auto &t : ber_q_terms(shape))
        ber += t.weight * rayleigh_avg_q(t.scale / interference);
    return ber;
}

std::vector<double> wishart_marginal_coefficients(int n_min, int n_max)
{
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("wishart_marginal_coefficients: need 1 <= n_min <= n_max");
    const int delta = n_max - n_min;
    std::vector<double> coef(static_cast<std::size_t>(delta + 2 * (n_min - 1) + 1), 0.0);

    // f(x) = (1/n_min) sum_i i!/(i+delta)! [L_i^delta(x)]^2 x^delta e^{-x},
    // L_i^delta(x) = sum_m (-1)^m C(i+delta, i-m) x^m / m!.
    for (int i = 0; i < n_min; ++i)
    {
        const double log_w = log_factorial(i) - log_factorial(i + delta) - std::log(static_cast<double>(n_min));
        auto log_laguerre = [&](int m) {
            return log_factorial(i + delta) - log_factorial(i - m) - log_factorial(delta + m) - log_factorial(m);
        };
        for (int m = 0; m <= i; ++m)
            for (int n = 0; n <= i; ++n)
            {
                const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
                coef[static_cast<std::size_t>(m + n + delta)] += sign * std::exp(log_w + log_laguerre(m) + log_laguerre(n));
            }
    }
    return coef;
}

double wishart_avg_q(double beta, int n_min, int n_max)
{
    const auto coef = wishart_marginal_coefficients(n_min, n_max);
    double sum = 0.0;
    for (std::size_t b = 0; b < coef.size(); ++b)
    {
        if (coef[b] == 0.0)
            continue;
        sum += coef[b] * std::exp(log_factorial(static_cast<int>(b))) * gamma_weighted_q(beta, static_cast<int>(b));
    }
    return sum;
}

double svd_avg_ber(const ConstellationShape &shape, double kp, int n_min, int n_max, double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("svd_avg_ber: epsilon must be in [0, 1)");
    if (!(kp >= 0.0) || n_min < 1 || n_max < n_min)
        throw std::invalid_argument("svd_avg_ber: invalid argument");

    const auto &terms = ber_q_terms(shape);
    double ber = 0.0;
    if (epsilon == 0.0)
    {
        const double per_stream = kp / n_min;
        for (const auto &t : terms)
            ber += t.weight * wishart_avg_q(t.scale * per_stream, n_min, n_max);
        return ber;
    }

    // lambda = lambda_hat + a, a = eps / (1 - eps); the SINR is then
    // beta' lambda / scale with beta' = scale (1-eps) / (n_min/kp + (n_min-1) eps).
    const auto coef = wishart_marginal_coefficients(n_min, n_max);
    const double a = epsilon / (1.0 - epsilon);
    const double gain = (1.0 - epsilon) / (n_min / kp + (n_min - 1) * epsilon);
    auto density = [&](double x) {
        double poly = 0.0;
        for (std::size_t b = coef.size(); b-- > 0;)
            poly = poly * x + coef[b];
        return poly * std::exp(-x);
    };
    for (const auto &t : terms)
    {
        const double beta = t.scale * gain;
        auto integrand = [&](double x) { return q_function(std::sqrt(beta * (x + a))) * density(x); };
        const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-12);
        ber += t.weight * value;
    }
    return ber;
}

double maxsinr_predicted_ber(const ConstellationShape &shape, double sinr) { return ber_awgn_instant(shape, sinr); }

} // namespace iasim
