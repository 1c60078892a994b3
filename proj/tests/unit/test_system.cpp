// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include "romgrid/errors.hpp"
#include "romgrid/io/synthetic.hpp"
#include "romgrid/system.hpp"
#include "support/oracles.hpp"

using namespace romgrid;
using namespace romgrid::testing;

TEST_CASE("monomials evaluate integer powers", "[system]")
{
  const SamplePoint p{{"d", 2.0}, {"s", Complex(0, 3)}};
  CHECK(Monomial::Power("d", -1).Evaluate(p) == Complex(0.5));
  CHECK(Monomial::Power("s", 2, 2.0).Evaluate(p) == Complex(-18.0));
  CHECK(Monomial::Constant(Complex(1, 1)).Evaluate(p) == Complex(1, 1));
  const Monomial m = Monomial::Power("s", 1) * Monomial::Power("d", -1);
  CHECK(m.Evaluate(p) == Complex(0, 1.5));
  // s · s⁻¹ cancels to a constant.
  CHECK((Monomial::Power("s", 1) * Monomial::Power("s", -1)).IsConstant());
}

TEST_CASE("monomial evaluation errors", "[system]")
{
  CHECK_THROWS_AS(Monomial::Power("d", -2).Evaluate(SamplePoint{{"d", 0.0}}),
                  ZeroToNegativePowerError);
  CHECK_THROWS_AS(Monomial::Power("x", 1).Evaluate(SamplePoint{{"s", 1.0}}),
                  MissingParameterError);
  CHECK(Monomial::Power("d", 2).Evaluate(SamplePoint{{"d", 0.0}}) == Complex(0.0));
}

TEST_CASE("affine apply matches the assembled matrix", "[system]")
{
  Rng rng(21);
  const auto sys = RandomAffineSystem(15, 2, 3, rng);
  const ComplexMatrix X = RandomComplex(15, 4, rng);
  for (int k = 0; k < 5; k++)
  {
    const SamplePoint p = RandomAbPoint(rng);
    const ComplexMatrix Q = Assemble(sys.Q(), p);
    CHECK((sys.Q().Apply(p, X) - Q * X).norm() <= 1e-13 * (Q * X).norm());
    CHECK((sys.Q().ApplyTransposed(p, X) - Q.transpose() * X).norm() <=
          1e-13 * (Q * X).norm());
    CHECK((Assemble(sys.Q().Transposed(), p) - Q.transpose()).norm() == 0.0);
  }
}

TEST_CASE("constant terms fold into the base", "[system]")
{
  AffineMatrix M(ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  M.AddTerm(Monomial::Constant(3.0), ComplexMatrix::Identity(2, 2));
  CHECK(M.IsConstant());
  CHECK(M.Base()(0, 0) == Complex(4.0));
}

TEST_CASE("first-order systems assemble sE - A", "[system]")
{
  Rng rng(22);
  const ComplexMatrix E = RandomReal(6, 6, rng), A = RandomReal(6, 6, rng);
  const auto sys = FromFirstOrder(AffineMatrix(E), AffineMatrix(A),
                                  AffineMatrix(RandomReal(6, 1, rng)),
                                  AffineMatrix(RandomReal(1, 6, rng)));
  const Complex s(0.2, 1.7);
  CHECK((Assemble(sys.Q(), SamplePoint{{"s", s}}) - (s * E - A)).norm() <= 1e-14 * E.norm());
  REQUIRE(sys.ParameterNames().size() == 1);
  CHECK(sys.ParameterNames()[0] == "s");
}

TEST_CASE("second-order systems assemble T + sD + s²M", "[system]")
{
  Rng rng(23);
  const ComplexMatrix M = RandomReal(5, 5, rng), D = RandomReal(5, 5, rng),
                      T = RandomReal(5, 5, rng);
  const auto sys =
      FromSecondOrder(AffineMatrix(M), AffineMatrix(D), AffineMatrix(T),
                      AffineMatrix(RandomReal(5, 1, rng)), AffineMatrix(RandomReal(1, 5, rng)));
  const Complex s(0.1, -2.0);
  const ComplexMatrix expected = T + s * D + s * s * M;
  CHECK((Assemble(sys.Q(), SamplePoint{{"s", s}}) - expected).norm() <=
        1e-14 * expected.norm());
}

TEST_CASE("system construction validates shapes and parameters", "[system]")
{
  AffineMatrix Q(ComplexMatrix(ComplexMatrix::Identity(3, 3)));
  AffineMatrix B(ComplexMatrix(ComplexMatrix::Ones(3, 1)));
  AffineMatrix C(ComplexMatrix(ComplexMatrix::Ones(1, 3)));
  CHECK_NOTHROW(ParametricSystem(Q, B, C, {}));
  CHECK_THROWS_AS(ParametricSystem(Q, AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(4, 1))), C, {}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(ParametricSystem(Q, B, AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(1, 2))), {}),
                  DimensionMismatchError);
  AffineMatrix Qp = Q;
  Qp.AddTerm(Monomial::Power("theta", 1), ComplexMatrix::Identity(3, 3));
  CHECK_THROWS_AS(ParametricSystem(Qp, B, C, {"s"}), UnknownParameterError);
  CHECK_NOTHROW(ParametricSystem(Qp, B, C, {"theta"}));
}

TEST_CASE("RC ladder transfer function matches frozen values", "[system]")
{
  // Values from an independent dense computation.
  const auto sys = io::RcLadder(4);
  CHECK(std::abs(TransferFunction(sys, SamplePoint{{"s", 1.0}})(0, 0) -
                 Complex(0.38235294117647056, 0.0)) <= 1e-15);
  const Complex s(0.0, 2.0 * std::numbers::pi * 0.1);
  CHECK(std::abs(TransferFunction(sys, SamplePoint{{"s", s}})(0, 0) -
                 Complex(0.47605639798580324, -0.28479601715217867)) <= 1e-14);
  // At DC the ladder is a chain of conductances with a unit load: H(0) = 1/g.
  CHECK(std::abs(TransferFunction(io::RcLadder(50, 2.0), SamplePoint{{"s", 0.0}})(0, 0) -
                 0.5) <= 1e-13);
}

TEST_CASE("transfer function matches the elimination oracle", "[system]")
{
  Rng rng(24);
  const auto sys = RandomAffineSystem(25, 2, 3, rng);
  for (int k = 0; k < 5; k++)
  {
    const SamplePoint p = RandomAbPoint(rng);
    const ComplexMatrix H = TransferFunction(sys, p);
    const ComplexMatrix Href = NaiveTransfer(sys, p);
    CHECK(H.rows() == 3);
    CHECK(H.cols() == 2);
    CHECK((H - Href).norm() <= 1e-12 * Href.norm());
  }
}

TEST_CASE("transposed system has the transposed transfer function", "[system]")
{
  Rng rng(25);
  const auto sys = RandomAffineSystem(12, 2, 3, rng);
  const SamplePoint p = RandomAbPoint(rng);
  const ComplexMatrix H = TransferFunction(sys, p);
  CHECK((TransferFunction(sys.Transposed(), p) - H.transpose()).norm() <= 1e-12 * H.norm());
  const ComplexMatrix x_du = DualSolveFull(sys, p);
  CHECK((Assemble(sys.Q(), p).transpose() * x_du - Assemble(sys.C(), p).transpose()).norm() <=
        1e-12 * x_du.norm());
}

TEST_CASE("channel slicing picks one input and one output", "[system]")
{
  Rng rng(26);
  const auto sys = RandomAffineSystem(10, 3, 2, rng);
  const SamplePoint p = RandomAbPoint(rng);
  const ComplexMatrix H = TransferFunction(sys, p);
  for (Eigen::Index i = 0; i < 3; i++)
  {
    for (Eigen::Index o = 0; o < 2; o++)
    {
      const auto ch = sys.Channel(i, o);
      CHECK(ch.NumInputs() == 1);
      CHECK(ch.NumOutputs() == 1);
      CHECK(std::abs(TransferFunction(ch, p)(0, 0) - H(o, i)) <= 1e-13 * std::abs(H(o, i)));
    }
  }
}

TEST_CASE("singular full-order operators are reported per sample", "[system]")
{
  const auto sys = FromFirstOrder(AffineMatrix(ComplexMatrix(ComplexMatrix::Identity(2, 2))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Zero(2, 2))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(2, 1))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(1, 2))));
  CHECK_THROWS_AS(TransferFunction(sys, SamplePoint{{"s", 0.0}}), SingularAtSampleError);
  CHECK_THROWS_AS(TransferFunction(sys, SamplePoint{{"s", 0.0}}), SingularMatrixError);
  CHECK_NOTHROW(TransferFunction(sys, SamplePoint{{"s", 1.0}}));
}
