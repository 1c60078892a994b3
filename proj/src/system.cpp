// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/system.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include "romgrid/errors.hpp"

namespace romgrid
{

namespace
{

std::string Dims(Eigen::Index r, Eigen::Index c)
{
  return std::to_string(r) + "x" + std::to_string(c);
}

void CheckSameShape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
  {
    throw DimensionMismatchError(std::string(what) + ": " + Dims(a.rows(), a.cols()) +
                                 " vs " + Dims(b.rows(), b.cols()));
  }
}

Complex IntPow(Complex v, int e)
{
  Complex out = 1.0;
  for (int k = 0; k < e; k++)
  {
    out *= v;
  }
  return out;
}

std::vector<std::string> WithLaplaceFirst(std::vector<std::string> names)
{
  if (std::find(names.begin(), names.end(), "s") == names.end())
  {
    names.insert(names.begin(), "s");
  }
  return names;
}

std::vector<std::string> MergeNames(std::vector<std::string> names,
                                    std::initializer_list<const AffineMatrix *> mats)
{
  for (const auto *m : mats)
  {
    for (const auto &name : m->ParameterNames())
    {
      if (std::find(names.begin(), names.end(), name) == names.end())
      {
        names.push_back(name);
      }
    }
  }
  return names;
}

}  // namespace

Complex SamplePoint::Value(const std::string &name) const
{
  auto it = values.find(name);
  if (it == values.end())
  {
    throw MissingParameterError("sample point has no value for parameter '" + name + "'");
  }
  return it->second;
}

Monomial Monomial::Power(const std::string &name, int e, Complex c)
{
  Monomial m{c, {}};
  if (e != 0)
  {
    m.exponents[name] = e;
  }
  return m;
}

Complex Monomial::Evaluate(const SamplePoint &p) const
{
  Complex v = coefficient;
  for (const auto &[name, e] : exponents)
  {
    const Complex x = p.Value(name);
    if (e < 0)
    {
      if (x == Complex(0.0))
      {
        throw ZeroToNegativePowerError("parameter '" + name + "' is zero but appears with exponent " +
                                       std::to_string(e));
      }
      v /= IntPow(x, -e);
    }
    else
    {
      v *= IntPow(x, e);
    }
  }
  return v;
}

Monomial Monomial::operator*(const Monomial &other) const
{
  Monomial out{coefficient * other.coefficient, exponents};
  for (const auto &[name, e] : other.exponents)
  {
    const int sum = out.exponents[name] + e;
    if (sum == 0)
    {
      out.exponents.erase(name);
    }
    else
    {
      out.exponents[name] = sum;
    }
  }
  return out;
}

AffineMatrix::AffineMatrix(Eigen::Index rows, Eigen::Index cols)
  : base(ComplexMatrix::Zero(rows, cols))
{
}

AffineMatrix::AffineMatrix(ComplexMatrix base_matrix) : base(std::move(base_matrix)) {}

void AffineMatrix::AddTerm(const Monomial &h, ComplexMatrix matrix)
{
  CheckSameShape(base, matrix, "affine term shape differs from base");
  if (h.IsConstant())
  {
    base += h.coefficient * matrix;
    return;
  }
  terms.push_back({h, std::move(matrix)});
}

void AffineMatrix::AddToBase(const ComplexMatrix &matrix)
{
  CheckSameShape(base, matrix, "affine base shape");
  base += matrix;
}

std::vector<std::string> AffineMatrix::ParameterNames() const
{
  std::set<std::string> names;
  for (const auto &t : terms)
  {
    for (const auto &[name, e] : t.h.exponents)
    {
      names.insert(name);
    }
  }
  return {names.begin(), names.end()};
}

std::vector<Complex> AffineMatrix::Coefficients(const SamplePoint &p) const
{
  std::vector<Complex> h;
  h.reserve(terms.size());
  for (const auto &t : terms)
  {
    h.push_back(t.h.Evaluate(p));
  }
  return h;
}

ComplexMatrix AffineMatrix::Apply(const SamplePoint &p, const ComplexMatrix &X) const
{
  if (X.rows() != cols())
  {
    throw DimensionMismatchError("affine apply: operand has " + std::to_string(X.rows()) +
                                 " rows, operator has " + std::to_string(cols()) + " columns");
  }
  ComplexMatrix Y = base * X;
  for (const auto &t : terms)
  {
    Y.noalias() += t.h.Evaluate(p) * (t.matrix * X);
  }
  return Y;
}

ComplexMatrix AffineMatrix::ApplyTransposed(const SamplePoint &p, const ComplexMatrix &X) const
{
  if (X.rows() != rows())
  {
    throw DimensionMismatchError("affine transposed apply: operand has " +
                                 std::to_string(X.rows()) + " rows, operator has " +
                                 std::to_string(rows()) + " rows");
  }
  ComplexMatrix Y = base.transpose() * X;
  for (const auto &t : terms)
  {
    Y.noalias() += t.h.Evaluate(p) * (t.matrix.transpose() * X);
  }
  return Y;
}

AffineMatrix AffineMatrix::Transposed() const
{
  AffineMatrix out(base.transpose());
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, t.matrix.transpose()});
  }
  return out;
}

AffineMatrix AffineMatrix::Scaled(Complex c) const
{
  AffineMatrix out(ComplexMatrix(c * base));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, c * t.matrix});
  }
  return out;
}

AffineMatrix AffineMatrix::TimesMonomial(const Monomial &m) const
{
  AffineMatrix out(rows(), cols());
  if (base.size() > 0 && base.cwiseAbs().maxCoeff() > 0.0)
  {
    out.AddTerm(m, base);
  }
  for (const auto &t : terms)
  {
    out.AddTerm(t.h * m, t.matrix);
  }
  return out;
}

AffineMatrix AffineMatrix::operator+(const AffineMatrix &other) const
{
  CheckSameShape(base, other.base, "affine sum");
  AffineMatrix out(ComplexMatrix(base + other.base));
  out.terms = terms;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

AffineMatrix AffineMatrix::Project(const ComplexMatrix &L, const ComplexMatrix &R) const
{
  if (L.cols() != rows() || R.rows() != cols())
  {
    throw DimensionMismatchError("affine projection: " + Dims(L.rows(), L.cols()) + " * " +
                                 Dims(rows(), cols()) + " * " + Dims(R.rows(), R.cols()));
  }
  AffineMatrix out(ComplexMatrix(L * (base * R)));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, L * (t.matrix * R)});
  }
  return out;
}

AffineMatrix AffineMatrix::RightMultiply(const ComplexMatrix &R) const
{
  if (R.rows() != cols())
  {
    throw DimensionMismatchError("affine right multiply: " + Dims(rows(), cols()) + " * " +
                                 Dims(R.rows(), R.cols()));
  }
  AffineMatrix out(ComplexMatrix(base * R));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, t.matrix * R});
  }
  return out;
}

AffineMatrix AffineMatrix::LeftMultiply(const ComplexMatrix &L) const
{
  if (L.cols() != rows())
  {
    throw DimensionMismatchError("affine left multiply: " + Dims(L.rows(), L.cols()) + " * " +
                                 Dims(rows(), cols()));
  }
  AffineMatrix out(ComplexMatrix(L * base));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, L * t.matrix});
  }
  return out;
}

AffineMatrix AffineMatrix::Column(Eigen::Index j) const
{
  AffineMatrix out(ComplexMatrix(base.col(j)));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, t.matrix.col(j)});
  }
  return out;
}

AffineMatrix AffineMatrix::Row(Eigen::Index i) const
{
  AffineMatrix out(ComplexMatrix(base.row(i)));
  for (const auto &t : terms)
  {
    out.terms.push_back({t.h, t.matrix.row(i)});
  }
  return out;
}

ComplexMatrix Assemble(const AffineMatrix &M, const SamplePoint &p)
{
  ComplexMatrix out = M.Base();
  for (const auto &t : M.Terms())
  {
    out += t.h.Evaluate(p) * t.matrix;
  }
  return out;
}

ParametricSystem::ParametricSystem(AffineMatrix Q, AffineMatrix B, AffineMatrix C,
                                   std::vector<std::string> names)
  : q(std::move(Q)), b(std::move(B)), c(std::move(C)), parameter_names(std::move(names))
{
  if (q.rows() != q.cols())
  {
    throw DimensionMismatchError("Q must be square, got " + Dims(q.rows(), q.cols()));
  }
  if (b.rows() != q.rows())
  {
    throw DimensionMismatchError("B has " + std::to_string(b.rows()) + " rows, expected n=" +
                                 std::to_string(q.rows()));
  }
  if (c.cols() != q.rows())
  {
    throw DimensionMismatchError("C has " + std::to_string(c.cols()) +
                                 " columns, expected n=" + std::to_string(q.rows()));
  }
  for (const auto *m : {&q, &b, &c})
  {
    for (const auto &name : m->ParameterNames())
    {
      if (std::find(parameter_names.begin(), parameter_names.end(), name) ==
          parameter_names.end())
      {
        throw UnknownParameterError("monomial references undeclared parameter '" + name + "'");
      }
    }
  }
}

ParametricSystem ParametricSystem::Transposed() const
{
  return ParametricSystem(q.Transposed(), c.Transposed(), b.Transposed(), parameter_names);
}

ParametricSystem ParametricSystem::Channel(Eigen::Index input, Eigen::Index output) const
{
  return ParametricSystem(q, b.Column(input), c.Row(output), parameter_names);
}

ParametricSystem FromFirstOrder(const AffineMatrix &E, const AffineMatrix &A,
                                const AffineMatrix &B, const AffineMatrix &C,
                                std::vector<std::string> names)
{
  if (E.rows() != E.cols() || A.rows() != A.cols() || E.rows() != A.rows())
  {
    throw DimensionMismatchError("first-order form needs square E, A of equal size, got E " +
                                 Dims(E.rows(), E.cols()) + ", A " + Dims(A.rows(), A.cols()));
  }
  AffineMatrix Q = E.TimesMonomial(Monomial::Power("s", 1)) + A.Scaled(-1.0);
  names = MergeNames(WithLaplaceFirst(std::move(names)), {&E, &A, &B, &C});
  return ParametricSystem(std::move(Q), B, C, std::move(names));
}

ParametricSystem FromSecondOrder(const AffineMatrix &M, const AffineMatrix &D,
                                 const AffineMatrix &T, const AffineMatrix &B,
                                 const AffineMatrix &C, std::vector<std::string> names)
{
  for (const auto *m : {&M, &D, &T})
  {
    if (m->rows() != m->cols() || m->rows() != T.rows())
    {
      throw DimensionMismatchError("second-order form needs square M, D, T of equal size");
    }
  }
  AffineMatrix Q = T + D.TimesMonomial(Monomial::Power("s", 1)) +
                   M.TimesMonomial(Monomial::Power("s", 2));
  names = MergeNames(WithLaplaceFirst(std::move(names)), {&M, &D, &T, &B, &C});
  return ParametricSystem(std::move(Q), B, C, std::move(names));
}

LuFactorization FactorAt(const ParametricSystem &sys, const SamplePoint &p)
{
  try
  {
    return LuFactorization(Assemble(sys.Q(), p));
  }
  catch (const SingularAtSampleError &)
  {
    throw;
  }
  catch (const SingularMatrixError &e)
  {
    throw SingularAtSampleError(std::string("Q is singular at sample: ") + e.what());
  }
}

ComplexMatrix PrimalSolveFull(const ParametricSystem &sys, const SamplePoint &p)
{
  return FactorAt(sys, p).Solve(Assemble(sys.B(), p));
}

ComplexMatrix DualSolveFull(const ParametricSystem &sys, const SamplePoint &p)
{
  return FactorAt(sys, p).SolveTransposed(Assemble(sys.C(), p).transpose());
}

ComplexMatrix TransferFunction(const ParametricSystem &sys, const SamplePoint &p)
{
  return Assemble(sys.C(), p) * PrimalSolveFull(sys, p);
}

}  // namespace romgrid
