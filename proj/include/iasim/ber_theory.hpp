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
#ifndef IASIM_BER_THEORY_HPP
#define IASIM_BER_THEORY_HPP

#include "iasim/modem.hpp"

#include <vector>

namespace iasim {

/// Gaussian tail probability.
double q_function(double x);

/// One term of the exact rectangular-QAM bit error rate:
/// BER(snr) = sum_t weight_t * Q(sqrt(scale_t * snr)).
struct QTerm
{
    double weight;
    double scale;
};

/// Exact Gray I x J QAM BER over AWGN written as a weighted sum of Q terms
/// (per-axis, per-bit-position sums with the floor sign pattern and eta
/// weights), with terms sharing an argument merged. Terms for J = 1 are
/// absent, so BPSK keeps only the in-phase sum.
const std::vector<QTerm> &ber_q_terms(const ConstellationShape &shape);

/// Instantaneous BER at post-processing SNR `post_snr`.
double ber_awgn_instant(const ConstellationShape &shape, double post_snr);

/// E[Q(sqrt(c X))] for X ~ Exp(1): (1 - sqrt(c / (c + 2))) / 2.
double rayleigh_avg_q(double c);

/// Rayleigh-averaged BER of a leakage-free IA link at power p, with CSIT
/// uncertainty adding residual interference eps (K - 1) p treated as noise.
double minil_avg_ber(const ConstellationShape &shape, double p, double epsilon, int k_users);

/// High-power limit of minil_avg_ber (the interference-limited floor).
double minil_ber_floor(const ConstellationShape &shape, double epsilon, int k_users);

/// Average per-stream BER of SVD spatial multiplexing over an i.i.d.
/// Rayleigh n_max x n_min channel, total power kp split over n_min streams.
///
/// epsilon = 0 uses the closed-form inner integral; epsilon in (0, 1)
/// replaces each eigenvalue by (1 - eps) lambda + eps and adds
/// cross-stream interference eps (n_min - 1) kp / n_min, evaluated with
/// adaptive quadrature. Throws for epsilon outside [0, 1).
double svd_avg_ber(const ConstellationShape &shape, double kp, int n_min, int n_max, double epsilon);

/// Predicted Max-SINR BER with residual interference treated as Gaussian.
double maxsinr_predicted_ber(const ConstellationShape &shape, double sinr);

/// Unordered-eigenvalue density of W = H^H H, H an n_max x n_min (or
/// transposed) matrix of CN(0, 1) entries, as polynomial coefficients:
/// f(x) = sum_b coef[b] x^b e^{-x}.
std::vector<double> wishart_marginal_coefficients(int n_min, int n_max);

/// E[Q(sqrt(beta lambda))] with lambda drawn from the density above.
double wishart_avg_q(double beta, int n_min, int n_max);

} // namespace iasim

#endif
