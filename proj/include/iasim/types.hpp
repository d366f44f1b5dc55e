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
#ifndef IASIM_TYPES_HPP
#define IASIM_TYPES_HPP

#include <Eigen/Core>

#include <complex>
#include <cstddef>

namespace iasim {

using cd = std::complex<double>;

// Antenna counts are capped so that every per-node matrix lives on the stack.
inline constexpr int kMaxAntennas = 8;

using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxAntennas, kMaxAntennas>;
using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAntennas, 1>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAntennas, 1>;

/// Transmission strategy of a frame.
enum class Mode { MinIL, MaxSinr, SvdSm, Adaptive };

const char *mode_name(Mode m);
Mode parse_mode(const char *name);

} // namespace iasim

#endif
