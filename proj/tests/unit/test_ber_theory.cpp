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
#include "iasim/modem.hpp"
#include "iasim/rng.hpp"
#include "iasim/svd_sm.hpp"

#include <Eigen/LU>

#include <cmath>
#include <vector>

using namespace iasim;

namespace {

double q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Direct evaluation of the exact Gray I x J expression, term by term,
// without merging: (1/log2(IJ)) [sum_m P_I(m) + sum_n P_J(n)] with
// P_I(m) = (2/I) sum_{i=0}^{(1-2^-m)I-1} (-1)^floor(i 2^(m-1) / I)
//          (2^(m-1) - floor(i 2^(m-1) / I + 1/2)) Q((2i+1) sqrt(6 snr / (I^2+J^2-2))).
double direct_ber(int I, int J, double snr)
{
    const double d = std::sqrt(6.0 * snr / (I * I + J * J - 2.0));
    auto axis = [&](int side) {
        double sum = 0.0;
        for (int m = 1; (1 << m) <= side; ++m)
        {
            const double half = std::pow(2.0, m - 1);
            const int last = static_cast<int>((1.0 - std::pow(2.0, -m)) * side) - 1;
            double pm = 0.0;
            for (int i = 0; i <= last; ++i)
            {
                const double sign = (static_cast<long>(std::floor(i * half / side)) % 2 == 0) ? 1.0 : -1.0;
                const double eta = half - std::floor(i * half / side + 0.5);
                pm += sign * eta * q((2.0 * i + 1.0) * d);
            }
            sum += 2.0 / side * pm;
        }
        return sum;
    };
    return (axis(I) + (J > 1 ? axis(J) : 0.0)) / std::log2(I * J);
}

} // namespace

TEST_CASE("Exact QAM expression")
{
    for (double g : {0.0, 0.3, 1.0, 10.0, 100.0})
        CHECK(ber_awgn_instant(shape_for_bits(2), g) == Catch::Approx(q(std::sqrt(g))).epsilon(1e-12));
    for (int b = 1; b <= 6; ++b)
    {
        const auto s = shape_for_bits(b);
        CHECK(ber_awgn_instant(s, 0.0) == Catch::Approx(0.5).epsilon(1e-14));
        for (double g : {0.5, 3.0, 10.0, 50.0, 400.0})
            CHECK(ber_awgn_instant(s, g) == Catch::Approx(direct_ber(s.i_side, s.j_side, g)).epsilon(1e-12));
    }
}

TEST_CASE("8-QAM at SNR 10 against a long AWGN run")
{
    const auto s = shape_for_bits(3);
    const double ref = direct_ber(4, 2, 10.0);
    CHECK(ber_awgn_instant(s, 10.0) == Catch::Approx(ref).epsilon(1e-12));
    RngStream rng(8);
    const int symbols = 10'000'000;
    const double amp = std::sqrt(10.0);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < symbols; ++i)
    {
        const auto l = static_cast<std::uint32_t>(rng() & 7u);
        const cd y = amp * modulate_label(l, s) + rng.complex_gaussian();
        const double e = __builtin_popcount(l ^ demodulate_label(y, 1.0, amp, s));
        s1 += e;
        s2 += e * e;
    }
    const double mean = s1 / symbols;
    const double se = std::sqrt((s2 / symbols - mean * mean) / symbols) / 3.0;
    CHECK(std::abs(mean / 3.0 - ref) <= 3.0 * se);
}

TEST_CASE("BER functions are monotone and bounded")
{
    for (int b = 1; b <= 6; ++b)
    {
        const auto s = shape_for_bits(b);
        double prev_awgn = 0.5, prev_ray = 0.5, prev_svd = 0.5;
        CHECK(minil_avg_ber(s, 0.0, 0.0, 3) == Catch::Approx(0.5));
        for (double p = 0.01; p < 1e6; p *= 1.7)
        {
            const double a = ber_awgn_instant(s, p), r = minil_avg_ber(s, p, 0.1, 3),
                         v = svd_avg_ber(s, p, 2, 3, 0.0);
            CHECK(a <= prev_awgn * (1 + 1e-12));
            CHECK(r <= prev_ray * (1 + 1e-12));
            CHECK(v <= prev_svd * (1 + 1e-9));
            CHECK(a >= 0.0);
            CHECK(r >= 0.0);
            CHECK(v >= 0.0);
            prev_awgn = a;
            prev_ray = r;
            prev_svd = v;
        }
    }
}

TEST_CASE("Rayleigh-averaged IA expression")
{
    const auto s = shape_for_bits(2);
    for (double p : {0.1, 1.0, 10.0, 1e3, 1e5})
    {
        CHECK(minil_avg_ber(s, p, 0.0, 3) == Catch::Approx(0.5 * (1.0 - std::sqrt(p / (p + 2.0)))).epsilon(1e-12));
        for (int k : {1, 2, 5})
            CHECK(minil_avg_ber(shape_for_bits(4), p, 0.0, k) == minil_avg_ber(shape_for_bits(4), p, 0.0, 3));
    }
    const double at_1e3 = minil_avg_ber(s, 1e3, 0.0, 3);
    CHECK(at_1e3 >= 0.00049);
    CHECK(at_1e3 <= 0.00051);
    CHECK(minil_avg_ber(s, 10.0, 0.0, 3) == Catch::Approx(0.5 * (1.0 - std::sqrt(10.0 / 12.0))));

    const double limit = 0.5 * (1.0 - std::sqrt(1.0 / (1.0 + 2.0 * 0.05 * 2.0)));
    CHECK(minil_ber_floor(s, 0.05, 3) == Catch::Approx(limit).epsilon(1e-12));
    CHECK(std::abs(minil_avg_ber(s, 1e6, 0.05, 3) - limit) < 1e-4);
    CHECK(minil_ber_floor(s, 0.0, 3) == 0.0);

    // Rayleigh average against direct numerical averaging over Exp(1).
    for (double c : {0.2, 3.0, 40.0})
    {
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i)
        {
            const double x = -std::log(1.0 - (i + 0.5) / n);
            sum += q(std::sqrt(c * x));
        }
        CHECK(rayleigh_avg_q(c) == Catch::Approx(sum / n).epsilon(1e-3));
    }
}

TEST_CASE("Wishart eigenvalue density")
{
    for (auto [n, m] : {std::pair{1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 3}, {2, 4}, {4, 4}})
    {
        const auto c = wishart_marginal_coefficients(n, m);
        double mass = 0.0, mean = 0.0, fact = 1.0;
        for (std::size_t b = 0; b < c.size(); ++b)
        {
            if (b > 0)
                fact *= static_cast<double>(b);
            mass += c[b] * fact;
            mean += c[b] * fact * (b + 1.0);
        }
        CHECK(mass == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(mean == Catch::Approx(static_cast<double>(m)).epsilon(1e-12));
    }

    // Average Q against sampled eigenvalues of random channels.
    RngStream rng(41);
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}})
        for (double beta : {0.5, 5.0})
        {
            const int trials = 100000;
            double s1 = 0.0, s2 = 0.0;
            for (int t = 0; t < trials; ++t)
            {
                CMat h(m, n);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        h(i, j) = rng.complex_gaussian();
                const auto sm = svd_decompose(h);
                double v = 0.0;
                for (int i = 0; i < n; ++i)
                    v += q(std::sqrt(beta * sm.s(i) * sm.s(i))) / n;
                s1 += v;
                s2 += v * v;
            }
            const double mean = s1 / trials;
            const double se = std::sqrt((s2 / trials - mean * mean) / trials);
            CHECK(std::abs(wishart_avg_q(beta, n, m) - mean) <= 3.0 * se);
        }
}

TEST_CASE("SVD spatial multiplexing expression")
{
    const auto qpsk = shape_for_bits(2);
    // The smallest eigenmode dominates at high power: its BER approaches
    // N^2 / (2 P K); the average over the N streams is 1/N of that.
    const double avg = svd_avg_ber(qpsk, 3.0 * 1e3, 2, 2, 0.0);
    CHECK(2.0 * avg == Catch::Approx(4.0 / 6000.0).epsilon(0.05));

    for (int b = 1; b <= 6; ++b)
        for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 4}})
        {
            const auto s = shape_for_bits(b);
            const double exact = svd_avg_ber(s, 100.0, n, m, 0.0);
            CHECK(svd_avg_ber(s, 100.0, n, m, 1e-13) == Catch::Approx(exact).epsilon(1e-8));
        }

    CHECK_THROWS_AS(svd_avg_ber(qpsk, 10.0, 2, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(svd_avg_ber(qpsk, 10.0, 2, 2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(svd_avg_ber(qpsk, 10.0, 3, 2, 0.0), std::invalid_argument);
}

TEST_CASE("SVD expression under CSI uncertainty against its model")
{
    // Model: each eigenvalue becomes (1 - eps) lambda + eps and the other
    // streams add eps (N - 1) KP / N of Gaussian interference.
    const auto qpsk = shape_for_bits(2);
    const double eps = 0.05, kp = 3.0 * 10.0;
    const int n = 2;
    RngStream rng(1234);
    const int trials = 1'000'000;
    double s1 = 0.0, s2 = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        CMat h(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                h(i, j) = rng.complex_gaussian();
        // Eigenvalues of the 2x2 Gram matrix in closed form.
        const CMat g = h.adjoint() * h;
        const double tr = g.trace().real(), det = g.determinant().real();
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        double v = 0.0;
        for (double lam : {0.5 * (tr + disc), 0.5 * (tr - disc)})
        {
            const double sinr = ((1.0 - eps) * lam + eps) * kp / n / (1.0 + eps * (n - 1) * kp / n);
            v += ber_awgn_instant(qpsk, sinr) / n;
        }
        s1 += v;
        s2 += v * v;
    }
    const double mean = s1 / trials;
    const double se = std::sqrt((s2 / trials - mean * mean) / trials);
    CHECK(std::abs(svd_avg_ber(qpsk, kp, n, n, eps) - mean) <= 3.0 * se);
}

TEST_CASE("Predicted Max-SINR BER")
{
    CHECK(maxsinr_predicted_ber(shape_for_bits(4), 0.0) == Catch::Approx(0.5));
    CHECK(maxsinr_predicted_ber(shape_for_bits(2), 7.0) == Catch::Approx(q(std::sqrt(7.0))).epsilon(1e-14));
    CHECK(maxsinr_predicted_ber(shape_for_bits(5), 33.0) == ber_awgn_instant(shape_for_bits(5), 33.0));
}
