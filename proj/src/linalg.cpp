// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include "romgrid/errors.hpp"

namespace romgrid
{

LuFactorization::LuFactorization(const ComplexMatrix &A) : dim(A.rows())
{
  if (A.rows() != A.cols())
  {
    throw DimensionMismatchError("LU factorization needs a square matrix, got " +
                                 std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  if (dim == 0)
  {
    return;
  }
  if (!A.allFinite())
  {
    throw SingularMatrixError("LU factorization input contains non-finite entries");
  }
  const double max_abs = A.cwiseAbs().maxCoeff();
  lu.compute(A);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double threshold =
      static_cast<double>(dim) * std::numeric_limits<double>::epsilon() * max_abs;
  if (min_pivot <= threshold)
  {
    throw SingularMatrixError("matrix is numerically singular (min pivot " +
                              std::to_string(min_pivot) + ", threshold " +
                              std::to_string(threshold) + ")");
  }
  rel_min_pivot = min_pivot / max_abs;
}

ComplexMatrix LuFactorization::Solve(const ComplexMatrix &B) const
{
  if (B.rows() != dim)
  {
    throw DimensionMismatchError("LU solve: rhs has " + std::to_string(B.rows()) +
                                 " rows, factorization has dimension " +
                                 std::to_string(dim));
  }
  if (dim == 0)
  {
    return ComplexMatrix(0, B.cols());
  }
  return lu.solve(B);
}

ComplexMatrix LuFactorization::SolveTransposed(const ComplexMatrix &B) const
{
  if (B.rows() != dim)
  {
    throw DimensionMismatchError("LU transposed solve: rhs has " + std::to_string(B.rows()) +
                                 " rows, factorization has dimension " +
                                 std::to_string(dim));
  }
  if (dim == 0)
  {
    return ComplexMatrix(0, B.cols());
  }
  return lu.transpose().solve(B);
}

double OrthonormalityDefect(const ComplexMatrix &V)
{
  if (V.cols() == 0)
  {
    return 0.0;
  }
  const ComplexMatrix G = V.adjoint() * V - ComplexMatrix::Identity(V.cols(), V.cols());
  return G.cwiseAbs().maxCoeff();
}

Eigen::Index AppendOrthonormal(ComplexMatrix &Q, const ComplexMatrix &block,
                               double deflation_tol)
{
  if (block.cols() == 0)
  {
    return 0;
  }
  if (Q.cols() == 0)
  {
    Q.resize(block.rows(), 0);
  }
  const Eigen::Index start = Q.cols();
  for (Eigen::Index j = 0; j < block.cols(); j++)
  {
    ComplexVector w = block.col(j);
    const double norm0 = w.norm();
    if (!(norm0 > 0.0))
    {
      continue;
    }
    // Two MGS sweeps: the second one restores orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; pass++)
    {
      for (Eigen::Index k = 0; k < Q.cols(); k++)
      {
        w -= Q.col(k) * Q.col(k).dot(w);
      }
    }
    const double norm1 = w.norm();
    if (norm1 <= deflation_tol * norm0)
    {
      continue;
    }
    Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
    Q.col(Q.cols() - 1) = w / norm1;
  }
  return Q.cols() - start;
}

ComplexMatrix RealifyColumns(const ComplexMatrix &block)
{
  ComplexMatrix out(block.rows(), 2 * block.cols());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < block.cols(); j++)
  {
    out.col(k++) = block.col(j).real().cast<Complex>();
  }
  for (Eigen::Index j = 0; j < block.cols(); j++)
  {
    if (block.col(j).imag().cwiseAbs().maxCoeff() > 0.0)
    {
      out.col(k++) = block.col(j).imag().cast<Complex>();
    }
  }
  out.conservativeResize(Eigen::NoChange, k);
  return out;
}

double SubspaceResidual(const ComplexMatrix &U, const ComplexMatrix &X)
{
  double worst = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); j++)
  {
    const double nx = X.col(j).norm();
    if (nx == 0.0)
    {
      continue;
    }
    ComplexVector r = X.col(j);
    if (U.cols() > 0)
    {
      r -= U * (U.adjoint() * r);
    }
    worst = std::max(worst, r.norm() / nx);
  }
  return worst;
}

}  // namespace romgrid
