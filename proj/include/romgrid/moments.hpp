// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_MOMENTS_HPP
#define ROMGRID_MOMENTS_HPP

#include <optional>
#include "romgrid/linalg.hpp"
#include "romgrid/system.hpp"

namespace romgrid
{

inline constexpr int kDefaultKrylovOrder = 3;
inline constexpr int kDefaultMultimomentOrder = 1;
inline constexpr Eigen::Index kDefaultMaxBlockColumns = 64;

enum class Direction
{
  Primal,
  Dual
};

enum class MomentMethod
{
  Auto,
  Krylov,
  Multimoment
};

struct ExpansionRequest
{
  SamplePoint point;
  // Number of moment levels. Krylov blocks use `order` powers; multimoment blocks return
  // R_0..R_order.
  int order = kDefaultMultimomentOrder;
  Direction direction = Direction::Primal;
  Eigen::Index max_columns = kDefaultMaxBlockColumns;
};

// Q(s) = s E - A with constant B and C.
struct FirstOrderSplit
{
  ComplexMatrix E;
  ComplexMatrix A;
  ComplexMatrix B;
  ComplexMatrix C;
};

// Returns the split when Q depends on "s" alone and only linearly, and B, C are constant.
std::optional<FirstOrderSplit> SplitFirstOrder(const ParametricSystem &sys);

// [B̃, ÃB̃, …, Ã^{q-1}B̃] with Ã = (sE-A)^{-1}E, B̃ = (sE-A)^{-1}B, one LU reused for all
// powers. Not orthonormalized. Throws InvalidConfigError if the system is not of the split
// form, SingularAtSampleError if sE-A is singular.
ComplexMatrix KrylovBlock(const ParametricSystem &sys, Complex s, int q = kDefaultKrylovOrder);

// Same with (sE-A)^{-T}Eᵀ and (sE-A)^{-T}Cᵀ.
ComplexMatrix DualKrylovBlock(const ParametricSystem &sys, Complex s,
                              int q = kDefaultKrylovOrder);

// [R_0, R_1, …, R_q] of the series expansion about req.point, with
// M_j = -Q(μⁱ)^{-1} Q_j and R_k = [M_1 R_{k-1}, …, M_p R_{k-1}]. R_0 stacks
// Q(μⁱ)^{-1} times the base and every term of B (Cᵀ for the dual direction, which also
// transposes Q). Columns past req.max_columns are dropped from the highest level; R_0 is
// always kept whole. Throws SingularAtSampleError.
ComplexMatrix MultimomentBlock(const ParametricSystem &sys, const ExpansionRequest &req);

// Auto picks Krylov for split first-order systems and the multimoment expansion otherwise.
// q < 0 selects the method's default order.
ComplexMatrix MomentBlock(const ParametricSystem &sys, const SamplePoint &point, Direction dir,
                          MomentMethod method = MomentMethod::Auto, int q = -1,
                          Eigen::Index max_columns = kDefaultMaxBlockColumns);

MomentMethod ResolveMethod(const ParametricSystem &sys, MomentMethod method);

}  // namespace romgrid

#endif  // ROMGRID_MOMENTS_HPP
