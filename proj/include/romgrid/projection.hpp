// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_PROJECTION_HPP
#define ROMGRID_PROJECTION_HPP

#include <string>
#include "romgrid/linalg.hpp"
#include "romgrid/system.hpp"

namespace romgrid
{

enum class BasisLabel
{
  V,
  W,
  Vdu,
  Wdu,
  Vrdu,
  Vrpr,
  Vrrpr
};

std::string ToString(BasisLabel label);

// Orthonormal column block, grown only by append-and-deflate.
class Basis
{
public:
  explicit Basis(BasisLabel label = BasisLabel::V) : label_(label) {}

  // Orthonormalizes the columns of X (deflating dependent ones).
  static Basis Span(BasisLabel label, const ComplexMatrix &X,
                    double deflation_tol = kDefaultDeflationTol);

  // Takes X as is; throws InvalidConfigError if ‖XᴴX - I‖_max > 1e-10.
  static Basis FromOrthonormal(BasisLabel label, ComplexMatrix X);

  BasisLabel Label() const { return label_; }
  const ComplexMatrix &Columns() const { return columns; }
  Eigen::Index rows() const { return columns.rows(); }
  Eigen::Index cols() const { return columns.cols(); }
  bool Empty() const { return columns.cols() == 0; }

  // In-place orthonormalize-append; returns the number of columns kept.
  Eigen::Index Append(const ComplexMatrix &block, double deflation_tol = kDefaultDeflationTol);

private:
  BasisLabel label_;
  ComplexMatrix columns;
};

// Value-returning form of Basis::Append. Throws DimensionMismatchError when the block row
// count differs from a nonempty basis.
Basis OrthonormalizeAppend(Basis basis, const ComplexMatrix &block,
                           double deflation_tol = kDefaultDeflationTol);

// Petrov-Galerkin reduced model: Q̂ = WᵀQV, B̂ = WᵀB, Ĉ = CV (termwise, plain transpose).
struct ReducedModel
{
  AffineMatrix q_hat;
  AffineMatrix b_hat;
  AffineMatrix c_hat;
  // Q(p) V kept termwise so full-order residuals of reduced solutions cost O(n r).
  AffineMatrix q_trial;
  Basis V;
  Basis W;

  Eigen::Index Dim() const { return V.cols(); }
};

// Throws DimensionMismatchError.
ReducedModel Reduce(const ParametricSystem &sys, const Basis &W, const Basis &V);

// Galerkin shorthand, W = V.
inline ReducedModel Reduce(const ParametricSystem &sys, const Basis &V)
{
  return Reduce(sys, V, V);
}

struct ReducedSolution
{
  ComplexMatrix z;      // r x k
  ComplexMatrix x_hat;  // n x k, V z
};

// Q̂(p) z = B̂(p), x̂ = V z. Throws SingularReducedSystemError.
ReducedSolution ReducedPrimalSolve(const ReducedModel &rom, const SamplePoint &p);

// The dual ROM is a ReducedModel of the transposed system, so its primal solve is the
// reduced dual solve Q̂_du z_du = Ĉ_du.
inline ReducedSolution ReducedDualSolve(const ReducedModel &rom_dual, const SamplePoint &p)
{
  return ReducedPrimalSolve(rom_dual, p);
}

// Q̂(p) z = Wᵀ rhs with a full-order right-hand side, x̂ = V z. Used for residual systems.
ReducedSolution ReducedSolveWithRhs(const ReducedModel &rom, const SamplePoint &p,
                                    const ComplexMatrix &rhs);

// rhs - Q(p) V z using the cached trial products.
ComplexMatrix ReducedResidual(const ReducedModel &rom, const SamplePoint &p,
                              const ComplexMatrix &z, const ComplexMatrix &rhs);

// r_pr = B(p) - Q(p) x̂_pr.
ComplexMatrix PrimalResidual(const ParametricSystem &sys, const SamplePoint &p,
                             const ComplexMatrix &x_hat);

// r_du = C(p)ᵀ - Q(p)ᵀ x̂_du.
ComplexMatrix DualResidual(const ParametricSystem &sys, const SamplePoint &p,
                           const ComplexMatrix &x_hat_du);

}  // namespace romgrid

#endif  // ROMGRID_PROJECTION_HPP
