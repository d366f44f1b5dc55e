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
#ifndef IASIM_SVD_SM_HPP
#define IASIM_SVD_SM_HPP

#include "iasim/types.hpp"

#include <vector>

namespace iasim {

/// Full SVD H = U S V^H of one point-to-point channel.
struct SmSolution
{
    CMat u_mat;  // nr x nr unitary
    RVec s;      // n_min singular values, descending
    CMat v_mat;  // nt x nt unitary
    int n_min = 0;
    int n_max = 0;
};

/// Exact SVD with descending singular values. Each right singular vector is
/// rotated so its first nonzero component is real and nonnegative; the
/// matching left vector gets the same rotation. Throws on non-finite input.
SmSolution svd_decompose(const CMat &h);

/// Eigen-channel gains lambda_1 >= ... >= lambda_{n_min}.
std::vector<double> sm_equivalent_channels(const SmSolution &sol);

/// Post-processing matrix U_{:,1:n}^H H V_{:,1:n} seen when transceivers
/// designed for one channel operate over `h_true`.
CMat sm_effective_matrix(const SmSolution &design, const CMat &h_true);

} // namespace iasim

#endif
