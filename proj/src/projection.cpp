// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/projection.hpp"

#include <string>
#include "romgrid/errors.hpp"

namespace romgrid
{

namespace
{

LuFactorization FactorReduced(const ReducedModel &rom, const SamplePoint &p)
{
  try
  {
    return LuFactorization(Assemble(rom.q_hat, p));
  }
  catch (const SingularMatrixError &e)
  {
    throw SingularReducedSystemError("reduced operator of dimension " +
                                     std::to_string(rom.Dim()) + " is singular: " + e.what());
  }
}

}  // namespace

std::string ToString(BasisLabel label)
{
  switch (label)
  {
    case BasisLabel::V:
      return "V";
    case BasisLabel::W:
      return "W";
    case BasisLabel::Vdu:
      return "V_du";
    case BasisLabel::Wdu:
      return "W_du";
    case BasisLabel::Vrdu:
      return "V_rdu";
    case BasisLabel::Vrpr:
      return "V_rpr";
    case BasisLabel::Vrrpr:
      return "V_rrpr";
  }
  return "?";
}

Basis Basis::Span(BasisLabel label, const ComplexMatrix &X, double deflation_tol)
{
  Basis b(label);
  b.Append(X, deflation_tol);
  if (b.columns.cols() == 0)
  {
    b.columns.resize(X.rows(), 0);
  }
  return b;
}

Basis Basis::FromOrthonormal(BasisLabel label, ComplexMatrix X)
{
  const double defect = OrthonormalityDefect(X);
  if (defect > 1.0e-10)
  {
    throw InvalidConfigError("basis " + ToString(label) + " is not orthonormal (defect " +
                             std::to_string(defect) + ")");
  }
  Basis b(label);
  b.columns = std::move(X);
  return b;
}

Eigen::Index Basis::Append(const ComplexMatrix &block, double deflation_tol)
{
  if (columns.cols() > 0 && block.rows() != columns.rows())
  {
    throw DimensionMismatchError("basis " + ToString(label_) + " has " +
                                 std::to_string(columns.rows()) + " rows, block has " +
                                 std::to_string(block.rows()));
  }
  return AppendOrthonormal(columns, block, deflation_tol);
}

Basis OrthonormalizeAppend(Basis basis, const ComplexMatrix &block, double deflation_tol)
{
  basis.Append(block, deflation_tol);
  return basis;
}

ReducedModel Reduce(const ParametricSystem &sys, const Basis &W_in, const Basis &V_in)
{
  // An empty basis carries no row count; give it the system's.
  const auto sized = [&](const Basis &b)
  { return b.Empty() ? Basis::FromOrthonormal(b.Label(), ComplexMatrix(sys.n(), 0)) : b; };
  const Basis W = sized(W_in);
  const Basis V = sized(V_in);
  if (V.rows() != sys.n() || W.rows() != sys.n() || V.cols() != W.cols())
  {
    throw DimensionMismatchError("reduce: system n=" + std::to_string(sys.n()) + ", V is " +
                                 std::to_string(V.rows()) + "x" + std::to_string(V.cols()) +
                                 ", W is " + std::to_string(W.rows()) + "x" +
                                 std::to_string(W.cols()));
  }
  const ComplexMatrix Wt = W.Columns().transpose();
  ReducedModel rom;
  rom.q_trial = sys.Q().RightMultiply(V.Columns());
  rom.q_hat = rom.q_trial.LeftMultiply(Wt);
  rom.b_hat = sys.B().LeftMultiply(Wt);
  rom.c_hat = sys.C().RightMultiply(V.Columns());
  rom.V = V;
  rom.W = W;
  return rom;
}

ReducedSolution ReducedPrimalSolve(const ReducedModel &rom, const SamplePoint &p)
{
  const auto lu = FactorReduced(rom, p);
  ReducedSolution sol;
  sol.z = lu.Solve(Assemble(rom.b_hat, p));
  sol.x_hat = rom.V.Columns() * sol.z;
  return sol;
}

ReducedSolution ReducedSolveWithRhs(const ReducedModel &rom, const SamplePoint &p,
                                    const ComplexMatrix &rhs)
{
  if (rhs.rows() != rom.W.rows())
  {
    throw DimensionMismatchError("reduced solve: rhs has " + std::to_string(rhs.rows()) +
                                 " rows, basis has " + std::to_string(rom.W.rows()));
  }
  const auto lu = FactorReduced(rom, p);
  ReducedSolution sol;
  sol.z = lu.Solve(rom.W.Columns().transpose() * rhs);
  sol.x_hat = rom.V.Columns() * sol.z;
  return sol;
}

ComplexMatrix ReducedResidual(const ReducedModel &rom, const SamplePoint &p,
                              const ComplexMatrix &z, const ComplexMatrix &rhs)
{
  return rhs - rom.q_trial.Apply(p, z);
}

ComplexMatrix PrimalResidual(const ParametricSystem &sys, const SamplePoint &p,
                             const ComplexMatrix &x_hat)
{
  return Assemble(sys.B(), p) - sys.Q().Apply(p, x_hat);
}

ComplexMatrix DualResidual(const ParametricSystem &sys, const SamplePoint &p,
                           const ComplexMatrix &x_hat_du)
{
  return Assemble(sys.C(), p).transpose() - sys.Q().ApplyTransposed(p, x_hat_du);
}

}  // namespace romgrid
