// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/moments.hpp"

#include <algorithm>
#include <string>
#include <vector>
#include "romgrid/errors.hpp"

namespace romgrid
{

namespace
{

bool IsLinearInS(const Monomial &h)
{
  return h.exponents.size() == 1 && h.exponents.begin()->first == "s" &&
         h.exponents.begin()->second == 1;
}

FirstOrderSplit RequireSplit(const ParametricSystem &sys)
{
  auto split = SplitFirstOrder(sys);
  if (!split)
  {
    throw InvalidConfigError(
        "Krylov blocks need Q(s) = sE - A with constant B and C; use the multimoment "
        "expansion for this system");
  }
  return *split;
}

LuFactorization FactorShifted(const FirstOrderSplit &split, Complex s)
{
  try
  {
    return LuFactorization(s * split.E - split.A);
  }
  catch (const SingularMatrixError &e)
  {
    throw SingularAtSampleError("sE - A is singular at s = (" + std::to_string(s.real()) +
                                ", " + std::to_string(s.imag()) + "): " + e.what());
  }
}

void AppendColumns(ComplexMatrix &out, const ComplexMatrix &block)
{
  const Eigen::Index c0 = out.cols();
  out.conservativeResize(block.rows(), c0 + block.cols());
  out.rightCols(block.cols()) = block;
}

}  // namespace

std::optional<FirstOrderSplit> SplitFirstOrder(const ParametricSystem &sys)
{
  if (!sys.B().IsConstant() || !sys.C().IsConstant() || sys.Q().IsConstant())
  {
    return std::nullopt;
  }
  FirstOrderSplit split;
  split.E = ComplexMatrix::Zero(sys.n(), sys.n());
  for (const auto &t : sys.Q().Terms())
  {
    if (!IsLinearInS(t.h))
    {
      return std::nullopt;
    }
    split.E += t.h.coefficient * t.matrix;
  }
  split.A = -sys.Q().Base();
  split.B = sys.B().Base();
  split.C = sys.C().Base();
  return split;
}

ComplexMatrix KrylovBlock(const ParametricSystem &sys, Complex s, int q)
{
  if (q < 1)
  {
    throw InvalidConfigError("Krylov order must be >= 1, got " + std::to_string(q));
  }
  const auto split = RequireSplit(sys);
  const auto lu = FactorShifted(split, s);
  ComplexMatrix level = lu.Solve(split.B);
  ComplexMatrix out = level;
  for (int k = 1; k < q; k++)
  {
    level = lu.Solve(split.E * level);
    AppendColumns(out, level);
  }
  return out;
}

ComplexMatrix DualKrylovBlock(const ParametricSystem &sys, Complex s, int q)
{
  if (q < 1)
  {
    throw InvalidConfigError("Krylov order must be >= 1, got " + std::to_string(q));
  }
  const auto split = RequireSplit(sys);
  const auto lu = FactorShifted(split, s);
  ComplexMatrix level = lu.SolveTransposed(split.C.transpose());
  ComplexMatrix out = level;
  for (int k = 1; k < q; k++)
  {
    level = lu.SolveTransposed(split.E.transpose() * level);
    AppendColumns(out, level);
  }
  return out;
}

ComplexMatrix MultimomentBlock(const ParametricSystem &sys, const ExpansionRequest &req)
{
  if (req.order < 0)
  {
    throw InvalidConfigError("multimoment order must be >= 0, got " +
                             std::to_string(req.order));
  }
  const bool dual = req.direction == Direction::Dual;
  const auto lu = FactorAt(sys, req.point);
  const auto solve = [&](const ComplexMatrix &X)
  { return dual ? lu.SolveTransposed(X) : lu.Solve(X); };

  // R_0: every constituent of the right-hand side, so that the block contains the solution
  // for any coefficient values.
  ComplexMatrix rhs(sys.n(), 0);
  const auto add_rhs = [&](const ComplexMatrix &M)
  {
    if (M.size() > 0 && M.cwiseAbs().maxCoeff() > 0.0)
    {
      AppendColumns(rhs, dual ? ComplexMatrix(M.transpose()) : M);
    }
  };
  const AffineMatrix &source = dual ? sys.C() : sys.B();
  add_rhs(source.Base());
  for (const auto &t : source.Terms())
  {
    add_rhs(t.matrix);
  }
  ComplexMatrix out = solve(rhs);

  ComplexMatrix prev = out;
  for (int k = 1; k <= req.order && out.cols() < req.max_columns; k++)
  {
    ComplexMatrix level(sys.n(), 0);
    for (const auto &t : sys.Q().Terms())
    {
      const ComplexMatrix Qj = dual ? ComplexMatrix(t.matrix.transpose()) : t.matrix;
      AppendColumns(level, -solve(Qj * prev));
    }
    const Eigen::Index room = req.max_columns - out.cols();
    if (level.cols() > room)
    {
      level.conservativeResize(Eigen::NoChange, room);
    }
    AppendColumns(out, level);
    prev = std::move(level);
    if (prev.cols() == 0)
    {
      break;
    }
  }
  return out;
}

MomentMethod ResolveMethod(const ParametricSystem &sys, MomentMethod method)
{
  if (method != MomentMethod::Auto)
  {
    return method;
  }
  return SplitFirstOrder(sys) ? MomentMethod::Krylov : MomentMethod::Multimoment;
}

ComplexMatrix MomentBlock(const ParametricSystem &sys, const SamplePoint &point, Direction dir,
                          MomentMethod method, int q, Eigen::Index max_columns)
{
  if (ResolveMethod(sys, method) == MomentMethod::Krylov)
  {
    const int order = q < 0 ? kDefaultKrylovOrder : q;
    const Complex s = point.Value("s");
    return dir == Direction::Primal ? KrylovBlock(sys, s, order)
                                    : DualKrylovBlock(sys, s, order);
  }
  ExpansionRequest req;
  req.point = point;
  req.order = q < 0 ? kDefaultMultimomentOrder : q;
  req.direction = dir;
  req.max_columns = max_columns;
  return MultimomentBlock(sys, req);
}

}  // namespace romgrid
