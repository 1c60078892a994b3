// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_IO_SYNTHETIC_HPP
#define ROMGRID_IO_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include "romgrid/system.hpp"

namespace romgrid::io
{

// RC transmission line: Q(s) = s Cap + G with G = g tridiag(-1, 2, -1) (last diagonal entry g,
// open end) and Cap = c I. B = e_1, C = e_1ᵀ, so the model is exactly symmetric with B = Cᵀ
// and H(0) = 1/g.
ParametricSystem RcLadder(Eigen::Index n, double g = 1.0, double c = 1.0);

// Dense nonsymmetric first-order SISO model with E = I and
// A = -PᵀP/n - I + (S - Sᵀ)/√n, so the symmetric part of A is <= -I.
ParametricSystem RandomStable(Eigen::Index n, std::uint64_t seed);

// Gyroscope-like second-order model in (s, d, theta, alpha, beta):
//   M = M1 + d M2, T = T1 + T2/d + d T3, D = theta (D1 + d D2) + alpha M + beta T,
//   Q = T + s D + s² M, B = Cᵀ.
// All constituent matrices are symmetric positive definite.
ParametricSystem SymmetricSecondOrder(Eigen::Index n, std::uint64_t seed);

// First-order MIMO model with `ports` inputs and outputs, E = I, symmetric stable A and
// B = Cᵀ.
ParametricSystem MimoBlock(Eigen::Index n, Eigen::Index ports, std::uint64_t seed);

// "rc_ladder:N", "random_stable:N[:SEED]", "symmetric_second_order:N[:SEED]",
// "mimo_block:N[:PORTS[:SEED]]". Throws InvalidConfigError.
ParametricSystem GenerateSynthetic(const std::string &spec);

}  // namespace romgrid::io

#endif  // ROMGRID_IO_SYNTHETIC_HPP
