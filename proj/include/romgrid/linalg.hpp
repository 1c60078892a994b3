// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_LINALG_HPP
#define ROMGRID_LINALG_HPP

#include <complex>
#include <cstddef>
#include <Eigen/Dense>

namespace romgrid
{

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultDeflationTol = 1.0e-10;

// Dense LU with partial pivoting, PA = LU. The factorization is reusable for any number of
// right-hand sides and for solves with the plain (non-conjugated) transpose of A.
class LuFactorization
{
public:
  // Throws SingularMatrixError when a pivot magnitude is <= dim * eps * max|A|.
  explicit LuFactorization(const ComplexMatrix &A);

  Eigen::Index Dim() const { return dim; }

  // Solves A X = B. Throws DimensionMismatchError if B.rows() != Dim().
  ComplexMatrix Solve(const ComplexMatrix &B) const;

  // Solves Aᵀ X = B.
  ComplexMatrix SolveTransposed(const ComplexMatrix &B) const;

  // Smallest pivot magnitude |U_ii| relative to max|A|; 1 for an empty matrix.
  double RelativeMinPivot() const { return rel_min_pivot; }

private:
  Eigen::Index dim;
  Eigen::PartialPivLU<ComplexMatrix> lu;
  double rel_min_pivot = 1.0;
};

inline LuFactorization LuFactor(const ComplexMatrix &A)
{
  return LuFactorization(A);
}

inline ComplexMatrix Solve(const LuFactorization &f, const ComplexMatrix &B)
{
  return f.Solve(B);
}

// Plain bilinear product xᵀy, no conjugation. The estimator formulas are all written with
// this pairing.
inline Complex DotT(const ComplexVector &x, const ComplexVector &y)
{
  return (x.transpose() * y)(0, 0);
}

// Max-norm deviation of VᴴV from the identity.
double OrthonormalityDefect(const ComplexMatrix &V);

// Append the columns of `block` to the orthonormal column set `Q` using modified
// Gram-Schmidt with one re-orthogonalization pass. A column whose component orthogonal
// to the current span has norm <= deflation_tol * (its original norm) is dropped, as is
// any zero column. Returns the number of columns appended.
Eigen::Index AppendOrthonormal(ComplexMatrix &Q, const ComplexMatrix &block,
                               double deflation_tol = kDefaultDeflationTol);

// Splits a complex block into [Re(block), Im(block)], dropping all-zero imaginary columns.
// The result spans the input over the complex field and is real-valued.
ComplexMatrix RealifyColumns(const ComplexMatrix &block);

// Largest principal angle residual: max over columns of ‖x - U Uᴴ x‖ / ‖x‖ with U
// orthonormal. Zero iff span(X) ⊆ span(U).
double SubspaceResidual(const ComplexMatrix &U, const ComplexMatrix &X);

}  // namespace romgrid

#endif  // ROMGRID_LINALG_HPP
