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
#include "iasim/svd_sm.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace iasim {

namespace {

// Phase that makes the first component with magnitude above `tol` real
// and nonnegative.
cd leading_phase(const CVec &x, double tol)
{
    for (int i = 0; i < x.size(); ++i)
    {
        const double a = std::abs(x(i));
        if (a > tol)
            return std::conj(x(i)) / a;
    }
    return 1.0;
}

} // namespace

SmSolution svd_decompose(const CMat &h)
{
    if (!h.allFinite())
        throw std::invalid_argument("svd_decompose: non-finite channel entry");

    const int nr = static_cast<int>(h.rows());
    const int nt = static_cast<int>(h.cols());
    Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);

    SmSolution sol;
    sol.n_min = std::min(nr, nt);
    sol.n_max = std::max(nr, nt);
    sol.s = svd.singularValues();
    sol.u_mat = svd.matrixU();
    sol.v_mat = svd.matrixV();

    constexpr double tol = 1e-12;
    for (int j = 0; j < nt; ++j)
    {
        const cd ph = leading_phase(sol.v_mat.col(j), tol);
        sol.v_mat.col(j) *= ph;
        if (j < sol.n_min)
            sol.u_mat.col(j) *= ph;
    }
    for (int j = sol.n_min; j < nr; ++j)
        sol.u_mat.col(j) *= leading_phase(sol.u_mat.col(j), tol);
    return sol;
}

std::vector<double> sm_equivalent_channels(const SmSolution &sol)
{
    return std::vector<double>(sol.s.data(), sol.s.data() + sol.n_min);
}

CMat sm_effective_matrix(const SmSolution &design, const CMat &h_true)
{
    const int n = design.n_min;
    return design.u_mat.leftCols(n).adjoint() * h_true * design.v_mat.leftCols(n);
}

} // namespace iasim
