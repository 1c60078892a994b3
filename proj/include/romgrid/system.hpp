// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_SYSTEM_HPP
#define ROMGRID_SYSTEM_HPP

#include <map>
#include <string>
#include <vector>
#include "romgrid/linalg.hpp"

namespace romgrid
{

// A point in the joint (parameter, frequency) space. The Laplace variable is stored under
// the name "s" like any other parameter.
struct SamplePoint
{
  std::map<std::string, Complex> values;

  SamplePoint() = default;
  SamplePoint(std::initializer_list<std::pair<const std::string, Complex>> init)
    : values(init)
  {
  }

  bool Contains(const std::string &name) const { return values.count(name) > 0; }

  // Throws MissingParameterError.
  Complex Value(const std::string &name) const;

  bool operator==(const SamplePoint &other) const = default;
};

// c * Π_k p_k^{e_k} with signed integer exponents.
struct Monomial
{
  Complex coefficient = 1.0;
  std::map<std::string, int> exponents;

  static Monomial Constant(Complex c) { return Monomial{c, {}}; }
  static Monomial Power(const std::string &name, int e, Complex c = 1.0);

  bool IsConstant() const { return exponents.empty(); }

  // Throws MissingParameterError or ZeroToNegativePowerError.
  Complex Evaluate(const SamplePoint &p) const;

  Monomial operator*(const Monomial &other) const;
};

struct AffineTerm
{
  Monomial h;
  ComplexMatrix matrix;
};

// M(p) = base + Σ_j h_j(p) M_j. Terms with constant monomials are folded into base on
// insertion, so every stored term depends on at least one parameter.
class AffineMatrix
{
public:
  AffineMatrix() = default;
  AffineMatrix(Eigen::Index rows, Eigen::Index cols);
  explicit AffineMatrix(ComplexMatrix base_matrix);

  Eigen::Index rows() const { return base.rows(); }
  Eigen::Index cols() const { return base.cols(); }

  const ComplexMatrix &Base() const { return base; }
  const std::vector<AffineTerm> &Terms() const { return terms; }

  // Throws DimensionMismatchError.
  void AddTerm(const Monomial &h, ComplexMatrix matrix);
  void AddToBase(const ComplexMatrix &matrix);

  bool IsConstant() const { return terms.empty(); }

  std::vector<std::string> ParameterNames() const;

  // h_j(p) for every stored term, in order.
  std::vector<Complex> Coefficients(const SamplePoint &p) const;

  // M(p) X without assembling M(p).
  ComplexMatrix Apply(const SamplePoint &p, const ComplexMatrix &X) const;
  // M(p)ᵀ X, plain transpose.
  ComplexMatrix ApplyTransposed(const SamplePoint &p, const ComplexMatrix &X) const;

  AffineMatrix Transposed() const;
  AffineMatrix Scaled(Complex c) const;
  // Every term (base included) multiplied by the monomial m.
  AffineMatrix TimesMonomial(const Monomial &m) const;
  AffineMatrix operator+(const AffineMatrix &other) const;

  // Termwise left/right products: L * M(p) * R for every term.
  AffineMatrix Project(const ComplexMatrix &L, const ComplexMatrix &R) const;
  AffineMatrix RightMultiply(const ComplexMatrix &R) const;
  AffineMatrix LeftMultiply(const ComplexMatrix &L) const;

  // Single-column / single-row restrictions used for MIMO channel slicing.
  AffineMatrix Column(Eigen::Index j) const;
  AffineMatrix Row(Eigen::Index i) const;

private:
  ComplexMatrix base;
  std::vector<AffineTerm> terms;
};

// base + Σ h_j(p) M_j. Throws MissingParameterError, ZeroToNegativePowerError.
ComplexMatrix Assemble(const AffineMatrix &M, const SamplePoint &p);

// Full-order frequency-domain system Q(p) x = B(p), y = C(p) x.
class ParametricSystem
{
public:
  ParametricSystem() = default;
  // Throws DimensionMismatchError or UnknownParameterError. Parameter names referenced by
  // monomials but absent from `names` are rejected.
  ParametricSystem(AffineMatrix Q, AffineMatrix B, AffineMatrix C,
                   std::vector<std::string> names);

  const AffineMatrix &Q() const { return q; }
  const AffineMatrix &B() const { return b; }
  const AffineMatrix &C() const { return c; }
  const std::vector<std::string> &ParameterNames() const { return parameter_names; }

  Eigen::Index n() const { return q.rows(); }
  Eigen::Index NumInputs() const { return b.cols(); }
  Eigen::Index NumOutputs() const { return c.rows(); }

  // Qᵀ, B := Cᵀ, C := Bᵀ. The primal system of the transposed model is the dual system.
  ParametricSystem Transposed() const;

  // SISO system for input column `input` and output row `output`.
  ParametricSystem Channel(Eigen::Index input, Eigen::Index output) const;

private:
  AffineMatrix q, b, c;
  std::vector<std::string> parameter_names;
};

// Q = s E + (-A). "s" is prepended to the parameter names if absent.
ParametricSystem FromFirstOrder(const AffineMatrix &E, const AffineMatrix &A,
                                const AffineMatrix &B, const AffineMatrix &C,
                                std::vector<std::string> names = {});

// Q = T + s D + s² M, reduced directly in the frequency domain (no companion form).
ParametricSystem FromSecondOrder(const AffineMatrix &M, const AffineMatrix &D,
                                 const AffineMatrix &T, const AffineMatrix &B,
                                 const AffineMatrix &C, std::vector<std::string> names = {});

// LU of Q(p); rethrows singularity as SingularAtSampleError.
LuFactorization FactorAt(const ParametricSystem &sys, const SamplePoint &p);

// H(p) = C(p) Q(p)^{-1} B(p), n_O x n_I.
ComplexMatrix TransferFunction(const ParametricSystem &sys, const SamplePoint &p);

// Q(p) x_pr = B(p).
ComplexMatrix PrimalSolveFull(const ParametricSystem &sys, const SamplePoint &p);

// Q(p)ᵀ x_du = C(p)ᵀ, plain transpose.
ComplexMatrix DualSolveFull(const ParametricSystem &sys, const SamplePoint &p);

}  // namespace romgrid

#endif  // ROMGRID_SYSTEM_HPP
