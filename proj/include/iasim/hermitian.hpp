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
#ifndef IASIM_HERMITIAN_HPP
#define IASIM_HERMITIAN_HPP

#include "iasim/types.hpp"

namespace iasim {

/// Unit eigenvector of the smallest eigenvalue of a Hermitian matrix.
///
/// 1x1 and 2x2 inputs use the closed form; larger ones go through Eigen's
/// self-adjoint solver. When the smallest eigenvalue is degenerate the result
/// is the normalized projection of the lowest-index basis vector e_j that has
/// a non-negligible component in the minimal eigenspace, so the choice is
/// deterministic.
CVec min_eigenvector(const CMat &q);

/// Smallest eigenvalue (used by tests and diagnostics).
double min_eigenvalue(const CMat &q);

} // namespace iasim

#endif
