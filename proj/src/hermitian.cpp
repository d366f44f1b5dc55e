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
#include "iasim/hermitian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace iasim {

namespace {

constexpr double kDegenerateTol = 1e-12;

CVec basis(int n, int j)
{
    CVec e = CVec::Zero(n);
    e(j) = 1.0;
    return e;
}

CVec min_eigenvector_2x2(const CMat &q)
{
    const double a = q(0, 0).real();
    const double d = q(1, 1).real();
    const cd b = q(0, 1);
    const double half_diff = 0.5 * (a - d);
    const double r = std::hypot(half_diff, std::abs(b));
    const double scale = std::max({std::abs(a), std::abs(d), std::abs(b)});
    if (r <= kDegenerateTol * scale || scale == 0.0)
        return basis(2, 0);

    const double lambda = 0.5 * (a + d) - r;
    CVec x1(2), x2(2);
    x1 << b, lambda - a;
    x2 << lambda - d, std::conj(b);
    CVec &x = x1.squaredNorm() >= x2.squaredNorm() ? x1 : x2;
    return x / x.norm();
}

} // namespace

CVec min_eigenvector(const CMat &q)
{
    const int n = static_cast<int>(q.rows());
    if (n == 1)
        return basis(1, 0);
    if (n == 2)
        return min_eigenvector_2x2(q);

    Eigen::SelfAdjointEigenSolver<CMat> es(q);
    const auto &evals = es.eigenvalues();
    const auto &evecs = es.eigenvectors();
    const double scale = std::max(std::abs(evals(0)), std::abs(evals(n - 1)));

    int cluster = 1;
    while (cluster < n && evals(cluster) - evals(0) <= kDegenerateTol * scale)
        ++cluster;
    if (cluster == 1 && scale > 0.0)
        return evecs.col(0);

    const auto basis_block = evecs.leftCols(cluster);
    for (int j = 0; j < n; ++j)
    {
        CVec p = basis_block * basis_block.row(j).adjoint();
        const double norm = p.norm();
        if (norm > 1e-3)
            return p / norm;
    }
    return evecs.col(0);
}

double min_eigenvalue(const CMat &q)
{
    if (q.rows() == 1)
        return q(0, 0).real();
    Eigen::SelfAdjointEigenSolver<CMat> es(q, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

} // namespace iasim
